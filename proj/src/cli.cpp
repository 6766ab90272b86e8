#include "fuselab/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "fuselab/fusion.hpp"
#include "fuselab/linking.hpp"
#include "fuselab/selftest.hpp"
#include "fuselab/subsystem.hpp"

namespace fuselab {

namespace {

struct GroupArgs {
  std::string file;
  std::string catalog;
  int p = 0;
};

GroupPtr resolve_group(const GroupArgs& args, json* input_info) {
  GroupPtr g;
  json info;
  if (!args.file.empty()) {
    std::ifstream in(args.file);
    if (!in) throw validation_error("cannot open group file: " + args.file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json doc = json::parse(text, nullptr, true);
    g = load_group_json(doc);
    info["source"] = args.file;
    info["digest"] = "fnv1a:" + std::to_string(fnv1a64(doc.dump()));
  } else if (!args.catalog.empty()) {
    const GroupSpec* spec = catalog_entry(args.catalog);
    if (!spec) throw validation_error("no catalog entry named " + args.catalog);
    g = load_group(*spec);
    info["source"] = "catalog:" + spec->name;
    info["digest"] = "fnv1a:" + std::to_string(fnv1a64(spec_to_json(*spec).dump()));
  } else {
    throw validation_error("one of --group or --catalog is required");
  }
  info["name"] = g->name();
  info["order"] = g->order();
  if (input_info) *input_info = info;
  return g;
}

Subgroup resolve_normal_subgroup(GroupPtr g, const std::string& gens) {
  std::vector<int> seeds;
  if (gens.find('(') != std::string::npos) {
    if (!g->has_permutations())
      throw validation_error("cycle-notation generators need a permutation group");
    for (const auto& perm : parse_generator_list(gens, g->permutation_degree())) {
      int e = g->element_of_permutation(perm);
      if (e < 0) throw validation_error("generator permutation is not an element of the group");
      seeds.push_back(e);
    }
  } else {
    seeds = parse_index_list(gens);
    for (int s : seeds)
      if (s < 0 || s >= g->order()) throw validation_error("generator index out of range");
  }
  return generate_subgroup(g, seeds);
}

json fusion_summary(const FusionSystem& F) {
  json doc;
  doc["prime"] = F.prime();
  doc["sylow_order"] = F.sylow().order;
  doc["objects"] = F.objects().size();
  doc["morphisms"] = F.morphism_count();
  doc["trivial"] = is_trivial_system(F);
  return doc;
}

json status_to_json(const SubgroupStatus& st) {
  json doc;
  doc["fully_normalized"] = st.fully_normalized;
  doc["fully_centralized"] = st.fully_centralized;
  doc["fully_automized"] = st.fully_automized;
  doc["receptive"] = st.receptive;
  doc["centric"] = st.centric;
  doc["radical"] = st.radical;
  doc["strongly_closed"] = st.strongly_closed;
  json witness = json::object();
  if (!st.why_not_fully_normalized.empty()) witness["fully_normalized"] = st.why_not_fully_normalized;
  if (!st.why_not_fully_centralized.empty())
    witness["fully_centralized"] = st.why_not_fully_centralized;
  if (!st.why_not_fully_automized.empty()) witness["fully_automized"] = st.why_not_fully_automized;
  if (!st.why_not_receptive.empty()) witness["receptive"] = st.why_not_receptive;
  if (!st.why_not_centric.empty()) witness["centric"] = st.why_not_centric;
  if (!st.why_not_radical.empty()) witness["radical"] = st.why_not_radical;
  if (!st.why_not_strongly_closed.empty()) witness["strongly_closed"] = st.why_not_strongly_closed;
  if (!witness.empty()) doc["witness"] = witness;
  return doc;
}

json chain_to_json(const SubsystemChain& chain) {
  json steps = json::array();
  for (size_t i = 0; i < chain.systems.size(); ++i) {
    json e = fusion_summary(chain.systems[i]);
    if (i > 0) e["step"] = chain.labels[i - 1];
    steps.push_back(e);
  }
  return steps;
}

int cmd_analyze(GroupPtr g, int p, json& result, std::ostream& out) {
  FusionSystem F = fusion_of_group(g, p);
  result["sylow"] = subgroup_to_json(F.sylow());
  result["morphisms"] = F.morphism_count();
  json subs = json::array();
  int centric_count = 0, cr_count = 0;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    SubgroupStatus st = subgroup_status(F, obj);
    json e;
    e["id"] = obj;
    e["subgroup"] = subgroup_to_json(F.object(obj));
    e["class"] = conjugacy_class_ids(F, obj);
    e["status"] = status_to_json(st);
    subs.push_back(e);
    if (st.centric) ++centric_count;
    if (st.centric && st.radical) ++cr_count;
  }
  result["subgroups"] = subs;
  SaturationReport sat = is_saturated(F);
  result["saturated"] = sat.saturated;
  if (!sat.saturated) result["saturation_witness"] = sat.detail;
  result["centric_count"] = centric_count;
  result["centric_radical_count"] = cr_count;
  result["hyperfocal"] = subgroup_to_json(hyperfocal(F));
  result["O_p"] = subgroup_to_json(op_of_fusion(F));
  out << "fusion system of " << g->name() << " at p=" << p << ": |S|=" << F.sylow().order
      << ", " << F.objects().size() << " subgroups, " << F.morphism_count() << " morphisms, "
      << (sat.saturated ? "saturated" : "NOT saturated") << "\n";
  for (const auto& e : subs) {
    out << "  order " << e["subgroup"]["order"] << " {";
    bool first = true;
    for (const auto& l : e["subgroup"]["labels"]) {
      if (!first) out << " ";
      out << l.get<std::string>();
      first = false;
    }
    out << "}";
    const json& st = e["status"];
    for (const char* flag : {"fully_normalized", "fully_centralized", "fully_automized",
                             "receptive", "centric", "radical", "strongly_closed"})
      if (st[flag].get<bool>()) out << " " << flag;
    out << "\n";
  }
  return 0;
}

int cmd_reduce(GroupPtr g, int p, json& result, std::ostream& out) {
  FusionSystem F = fusion_of_group(g, p);
  FInfinity fi = f_infinity(F);
  result["chain"] = chain_to_json(fi.chain);
  result["limit"] = fusion_summary(fi.limit);
  result["reduction"] = fusion_summary(reduction(F));
  out << "F^infinity chain for " << g->name() << " at p=" << p << ":\n";
  for (const auto& e : result["chain"]) {
    out << "  |S|=" << e["sylow_order"] << ", " << e["morphisms"] << " morphisms";
    if (e.contains("step")) out << "  (" << e["step"].get<std::string>() << ")";
    out << "\n";
  }
  out << "limit is " << (is_trivial_system(fi.limit) ? "the trivial system" : "nontrivial")
      << "\n";
  return 0;
}

int cmd_normal_check(GroupPtr g, int p, const std::string& gens, json& result,
                     std::ostream& out) {
  Subgroup N = resolve_normal_subgroup(g, gens);
  FusionSystem F = fusion_of_group(g, p);
  Subgroup T = intersect(F.sylow(), N);
  if (T.order != p_part(N.order, p))
    throw hypothesis_violation("S cap N is not a Sylow p-subgroup of N");
  FusionSystem E = fusion_of_group_action(N, p, T);
  NormalityReport nr = normality_report(F, E);
  result["N_order"] = N.order;
  result["T"] = subgroup_to_json(T);
  result["strongly_closed"] = nr.strongly_closed;
  result["invariance"] = nr.invariance;
  result["frattini"] = nr.frattini;
  result["extension"] = nr.extension;
  result["normal"] = nr.is_normal();
  json witness = json::object();
  if (!nr.why_not_strongly_closed.empty()) witness["strongly_closed"] = nr.why_not_strongly_closed;
  if (!nr.why_not_invariance.empty()) witness["invariance"] = nr.why_not_invariance;
  if (!nr.why_not_frattini.empty()) witness["frattini"] = nr.why_not_frattini;
  if (!nr.why_not_extension.empty()) witness["extension"] = nr.why_not_extension;
  if (!witness.empty()) result["witness"] = witness;
  out << "E = F_{S cap N}(N) with |N|=" << N.order << ", |T|=" << T.order << "\n";
  out << "strongly closed: " << nr.strongly_closed << ", invariance: " << nr.invariance
      << ", frattini: " << nr.frattini << ", extension: " << nr.extension << "\n";
  out << (nr.is_normal() ? "E is normal in F" : "E is NOT normal in F") << "\n";
  return nr.is_normal() ? 0 : 1;
}

int cmd_solv_check(GroupPtr g, int p, const std::string& gens, json& result, std::ostream& out) {
  Subgroup N = resolve_normal_subgroup(g, gens);
  FusionSystem F = fusion_of_group(g, p);
  Subgroup T = intersect(F.sylow(), N);
  if (T.order != p_part(N.order, p))
    throw hypothesis_violation("S cap N is not a Sylow p-subgroup of N");
  FusionSystem E = fusion_of_group_action(N, p, T);
  SolvReport rep = verify_solv(F, E);
  result["hypothesis"] = {{"aut_quotient_p_solvable", rep.hyp_a_p_solvable},
                          {"out_T_E_p_solvable", rep.hyp_b_out_p_solvable}};
  result["F_infinity"] = fusion_summary(rep.f_limit);
  result["E_infinity"] = fusion_summary(rep.e_limit);
  result["equal"] = rep.limits_equal;
  result["cross_check"] = rep.cross_check;
  result["chain"] = chain_to_json(rep.chain);
  out << "hypotheses: Aut_F(T)/Aut_E(T) p-solvable=" << rep.hyp_a_p_solvable
      << ", Out(T,E) p-solvable=" << rep.hyp_b_out_p_solvable << "\n";
  out << "F^infinity = E^infinity: " << (rep.limits_equal ? "true" : "FALSE") << "\n";
  out << "chain cross-check: " << (rep.cross_check ? "true" : "FALSE") << "\n";
  if (!rep.limits_equal || !rep.cross_check) {
    out << "theorem violation detected\n";
    return 2;
  }
  return 0;
}

int cmd_linking(GroupPtr g, int p, json& result, std::ostream& out) {
  LinkingSystem L = linking_of_group(g, p);
  LinkingReport rep = check_linking_axioms(L);
  result["objects"] = L.objects.size();
  json axioms;
  axioms["composition_well_defined"] = rep.composition_well_defined;
  axioms["composition_closed"] = rep.composition_closed;
  axioms["delta_injective"] = rep.delta_injective;
  axioms["pi_surjective"] = rep.pi_surjective;
  axioms["pi_delta_is_conjugation"] = rep.pi_delta_is_conjugation;
  axioms["cardinality_identity"] = rep.cardinality_identity;
  axioms["centric_decomposition"] = rep.centric_decomposition;
  result["axioms"] = axioms;
  result["ok"] = rep.ok();
  if (!rep.detail.empty()) result["detail"] = rep.detail;
  out << "linking system of " << g->name() << " at p=" << p << ": " << L.objects.size()
      << " centric objects, axioms " << (rep.ok() ? "pass" : "FAIL") << "\n";
  if (!rep.ok()) {
    out << rep.detail << "\n";
    return 2;
  }
  return 0;
}

int cmd_selftest(const SelftestOptions& opt, json& result, std::ostream& out) {
  auto results = run_selftest(opt);
  bool all = true;
  json suites = json::array();
  for (const auto& r : results) {
    json e;
    e["name"] = r.name;
    e["passed"] = r.passed;
    e["detail"] = r.detail;
    e["millis"] = r.millis;
    suites.push_back(e);
    all = all && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << static_cast<long>(r.millis)
        << " ms)" << (r.passed ? "" : ": " + r.detail) << "\n";
  }
  result["suites"] = suites;
  result["passed"] = all;
  out << (all ? "selftest passed" : "selftest FAILED") << "\n";
  return all ? 0 : 2;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, Report* report_out) {
  CLI::App app{"fuselab: an exact laboratory for saturated fusion systems"};
  app.require_subcommand(1);

  GroupArgs ga;
  std::string normal_gens, json_path, only;
  int selftest_prime = 0;

  auto add_group_opts = [&](CLI::App* cmd, bool with_gens) {
    cmd->add_option("--group", ga.file, "group document (JSON)");
    cmd->add_option("--catalog", ga.catalog, "builtin catalog name");
    cmd->add_option("-p,--prime", ga.p, "prime")->required();
    if (with_gens)
      cmd->add_option("--normal-gens", normal_gens,
                      "generators of N (cycle notation or element indices)")
          ->required();
    cmd->add_option("--json", json_path, "write the JSON report to this file");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "classify the subgroups of F_S(G)");
  add_group_opts(analyze, false);
  CLI::App* reduce = app.add_subcommand("reduce", "compute the F^infinity chain");
  add_group_opts(reduce, false);
  CLI::App* normal = app.add_subcommand("normal-check", "verify E = F_{S cap N}(N) normal in F");
  add_group_opts(normal, true);
  CLI::App* solv = app.add_subcommand("solv-check", "verify F^infinity = E^infinity");
  add_group_opts(solv, true);
  CLI::App* linking = app.add_subcommand("linking", "build and check L_S^c(G)");
  add_group_opts(linking, false);
  CLI::App* selftest = app.add_subcommand("selftest", "run the property suites");
  selftest->add_option("--only", only, "run a single suite");
  selftest->add_option("--prime", selftest_prime, "restrict to one prime");
  selftest->add_option("--json", json_path, "write the JSON report to this file");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, out);
    return code == 0 ? 0 : 3;
  }

  Report report;
  report.version = kVersion;
  report.command = argv;
  auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (app.got_subcommand(selftest)) {
      SelftestOptions opt;
      opt.only = only;
      opt.prime = selftest_prime;
      report.input = {{"suites", only.empty() ? "all" : only}};
      code = cmd_selftest(opt, report.result, out);
    } else {
      GroupPtr g = resolve_group(ga, &report.input);
      if (!is_prime(ga.p)) throw validation_error("p must be prime");
      report.input["prime"] = ga.p;
      if (app.got_subcommand(analyze)) code = cmd_analyze(g, ga.p, report.result, out);
      else if (app.got_subcommand(reduce)) code = cmd_reduce(g, ga.p, report.result, out);
      else if (app.got_subcommand(normal)) code = cmd_normal_check(g, ga.p, normal_gens, report.result, out);
      else if (app.got_subcommand(solv)) code = cmd_solv_check(g, ga.p, normal_gens, report.result, out);
      else if (app.got_subcommand(linking)) code = cmd_linking(g, ga.p, report.result, out);
    }
  } catch (const hypothesis_violation& e) {
    out << "hypothesis violation: " << e.what() << "\n";
    report.result["error"] = e.what();
    code = 1;
  } catch (const theorem_violation& e) {
    out << "theorem violation: " << e.what() << "\n";
    report.result["error"] = e.what();
    code = 2;
  } catch (const construction_unverified& e) {
    out << "construction unverified: " << e.what() << "\n";
    report.result["error"] = e.what();
    code = 2;
  } catch (const decomposition_error& e) {
    out << "decomposition error: " << e.what() << "\n";
    report.result["error"] = e.what();
    code = 2;
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    report.result["error"] = e.what();
    code = 3;
  }
  report.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!json_path.empty()) {
    std::ofstream jo(json_path);
    jo << report.to_json().dump(2) << "\n";
  }
  if (report_out) *report_out = report;
  return code;
}

}  // namespace fuselab
