#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fuselab/catalog.hpp"
#include "fuselab/cli.hpp"
#include "fuselab/fusion.hpp"
#include "fuselab/linking.hpp"
#include "fuselab/selftest.hpp"
#include "fuselab/subsystem.hpp"

namespace py = pybind11;
using namespace fuselab;

namespace {

struct PyGroup {
  GroupPtr g;
};

py::object json_to_py(const json& j) {
  py::module_ pyjson = py::module_::import("json");
  return pyjson.attr("loads")(j.dump());
}

PyGroup group_from_any(const py::object& src) {
  if (py::isinstance<py::str>(src)) {
    std::string name = src.cast<std::string>();
    const GroupSpec* spec = catalog_entry(name);
    if (!spec) throw validation_error("no catalog entry named " + name);
    return {load_group(*spec)};
  }
  py::module_ pyjson = py::module_::import("json");
  std::string dumped = pyjson.attr("dumps")(src).cast<std::string>();
  return {load_group_json(json::parse(dumped))};
}

}  // namespace

PYBIND11_MODULE(_fuselab, m) {
  m.doc() = "exact computations with saturated fusion systems over finite p-groups";
  m.attr("__version__") = kVersion;

  py::register_exception<hypothesis_violation>(m, "HypothesisViolation");
  py::register_exception<theorem_violation>(m, "TheoremViolation");
  py::register_exception<construction_unverified>(m, "ConstructionUnverified");
  py::register_exception<validation_error>(m, "ValidationError");

  py::class_<PyGroup>(m, "Group")
      .def_property_readonly("order", [](const PyGroup& g) { return g.g->order(); })
      .def_property_readonly("name", [](const PyGroup& g) { return g.g->name(); })
      .def("mul", [](const PyGroup& g, int a, int b) { return g.g->op(a, b); })
      .def("inverse", [](const PyGroup& g, int a) { return g.g->inverse(a); })
      .def("element_order", [](const PyGroup& g, int a) { return g.g->element_order(a); })
      .def("label", [](const PyGroup& g, int i) { return g.g->label(i); })
      .def("__repr__", [](const PyGroup& g) {
        std::ostringstream os;
        os << "Group(" << (g.g->name().empty() ? "?" : g.g->name()) << ", order="
           << g.g->order() << ")";
        return os.str();
      });

  py::class_<Subgroup>(m, "Subgroup")
      .def_property_readonly("order", [](const Subgroup& s) { return s.order; })
      .def_property_readonly("elements", [](const Subgroup& s) { return s.elements(); })
      .def("__contains__", [](const Subgroup& s, int e) { return s.contains(e); })
      .def("__repr__", [](const Subgroup& s) {
        return "Subgroup(order=" + std::to_string(s.order) + ")";
      });

  py::class_<FusionSystem>(m, "FusionSystem")
      .def_property_readonly("prime", &FusionSystem::prime)
      .def_property_readonly("sylow", &FusionSystem::sylow)
      .def_property_readonly("object_count",
                             [](const FusionSystem& f) { return f.objects().size(); })
      .def_property_readonly("morphism_count", &FusionSystem::morphism_count)
      .def("objects", [](const FusionSystem& f) { return f.objects(); })
      .def("is_saturated", [](const FusionSystem& f) { return is_saturated(f).saturated; })
      .def("subgroup_flags",
           [](const FusionSystem& f, int obj) {
             SubgroupStatus st = subgroup_status(f, obj);
             py::dict d;
             d["fully_normalized"] = st.fully_normalized;
             d["fully_centralized"] = st.fully_centralized;
             d["fully_automized"] = st.fully_automized;
             d["receptive"] = st.receptive;
             d["centric"] = st.centric;
             d["radical"] = st.radical;
             d["strongly_closed"] = st.strongly_closed;
             return d;
           })
      .def("hom_count",
           [](const FusionSystem& f, int pobj, int qobj) {
             return hom_set(f, f.object(pobj), f.object(qobj)).size();
           })
      .def("__repr__", [](const FusionSystem& f) {
        std::ostringstream os;
        os << "FusionSystem(p=" << f.prime() << ", |S|=" << f.sylow().order
           << ", morphisms=" << f.morphism_count() << ")";
        return os.str();
      });

  m.def("catalog_names", [] {
    std::vector<std::string> names;
    for (const auto& s : builtin_catalog()) names.push_back(s.name);
    return names;
  });
  m.def("load_group", &group_from_any, py::arg("source"),
        "load a group from a catalog name or a group document (dict)");
  m.def("sylow_subgroup", [](const py::object& src, int p) {
    return sylow_subgroup(group_from_any(src).g, p);
  });
  m.def("center_order", [](const py::object& src) {
    return center(whole_subgroup(group_from_any(src).g)).order;
  });
  m.def("is_p_solvable", [](const py::object& src, int p) {
    return p_solvable_series(whole_subgroup(group_from_any(src).g), p).solvable;
  });
  m.def("subgroup_count", [](const py::object& src) {
    return all_subgroups(whole_subgroup(group_from_any(src).g)).size();
  });
  m.def("fusion_of_group", [](const py::object& src, int p) {
    return fusion_of_group(group_from_any(src).g, p);
  });
  m.def("hyperfocal", &hyperfocal);
  m.def("o_p_subsystem", &o_p_subsystem);
  m.def("o_pprime_subsystem", &o_pprime_subsystem);
  m.def("fusion_equals", &fusion_equals);
  m.def("is_trivial_system", &is_trivial_system);
  m.def("f_infinity", [](const FusionSystem& f) {
    FInfinity fi = f_infinity(f);
    py::list chain;
    for (size_t i = 0; i < fi.chain.systems.size(); ++i) {
      py::dict e;
      e["sylow_order"] = fi.chain.systems[i].sylow().order;
      e["morphisms"] = fi.chain.systems[i].morphism_count();
      if (i > 0) e["step"] = fi.chain.labels[i - 1];
      chain.append(e);
    }
    return py::make_tuple(fi.limit, chain);
  });
  m.def("reduction", &reduction);

  // report-level entry points mirroring the CLI
  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    Report rep;
    std::vector<std::string> argv = {"fuselab"};
    argv.insert(argv.end(), args.begin(), args.end());
    int code = run_command(argv, out, &rep);
    py::dict d;
    d["exit_code"] = code;
    d["output"] = out.str();
    d["report"] = json_to_py(rep.to_json());
    return d;
  });
  m.def("selftest", [](const std::string& only, int prime) {
    SelftestOptions opt;
    opt.only = only;
    opt.prime = prime;
    py::list out;
    for (const auto& r : run_selftest(opt)) {
      py::dict d;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      d["millis"] = r.millis;
      out.append(d);
    }
    return out;
  }, py::arg("only") = "", py::arg("prime") = 0);
}
