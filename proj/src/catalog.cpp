#include "fuselab/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace fuselab {

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

GroupSpec spec_from_json(const json& doc) {
  GroupSpec s;
  if (!doc.is_object() || !doc.contains("format"))
    throw validation_error("group document must be an object with a format field");
  s.format = doc.at("format").get<std::string>();
  s.name = doc.value("name", std::string{});
  if (s.format == "cayley") {
    s.order = doc.at("order").get<int>();
    s.table = doc.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(s.table.size()) != s.order)
      throw validation_error("table size does not match order");
  } else if (s.format == "perm") {
    s.degree = doc.at("degree").get<int>();
    s.generators = doc.at("generators").get<std::vector<std::vector<std::vector<int>>>>();
  } else {
    throw validation_error("unknown group format: " + s.format);
  }
  if (doc.contains("primes")) s.primes = doc.at("primes").get<std::vector<int>>();
  return s;
}

json spec_to_json(const GroupSpec& s) {
  json doc;
  doc["format"] = s.format;
  doc["name"] = s.name;
  if (s.format == "cayley") {
    doc["order"] = s.order;
    doc["table"] = s.table;
  } else {
    doc["degree"] = s.degree;
    doc["generators"] = s.generators;
  }
  if (!s.primes.empty()) doc["primes"] = s.primes;
  return doc;
}

GroupPtr load_group(const GroupSpec& s) {
  if (s.format == "cayley") return FiniteGroup::from_table(s.table, {}, s.name);
  std::vector<std::vector<uint8_t>> gens;
  for (const auto& cycles : s.generators) {
    std::vector<uint8_t> perm(s.degree);
    for (int i = 0; i < s.degree; ++i) perm[i] = static_cast<uint8_t>(i);
    // cycles apply right to left
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      const auto& cyc = *it;
      std::vector<uint8_t> step(s.degree);
      for (int i = 0; i < s.degree; ++i) step[i] = static_cast<uint8_t>(i);
      for (size_t k = 0; k < cyc.size(); ++k) {
        int from = cyc[k] - 1, to = cyc[(k + 1) % cyc.size()] - 1;
        if (from < 0 || from >= s.degree || to < 0 || to >= s.degree)
          throw validation_error("cycle entry out of range");
        step[from] = static_cast<uint8_t>(to);
      }
      std::vector<uint8_t> next(s.degree);
      for (int i = 0; i < s.degree; ++i) next[i] = step[perm[i]];
      perm = std::move(next);
    }
    gens.push_back(std::move(perm));
  }
  return FiniteGroup::from_permutations(s.degree, gens, s.name);
}

GroupPtr load_group_json(const json& doc) { return load_group(spec_from_json(doc)); }

GroupPtr load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open group file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw validation_error(std::string("group file is not valid JSON: ") + e.what());
  }
  return load_group_json(doc);
}

// --- cycle notation ------------------------------------------------------------

std::vector<uint8_t> parse_permutation_cycles(const std::string& text, int degree) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw validation_error("expected '(' in cycle notation");
    size_t close = text.find(')', i);
    if (close == std::string::npos) throw validation_error("unbalanced cycle");
    std::istringstream nums(text.substr(i + 1, close - i - 1));
    std::vector<int> cyc;
    int v;
    while (nums >> v) cyc.push_back(v);
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  std::vector<uint8_t> perm(degree);
  for (int k = 0; k < degree; ++k) perm[k] = static_cast<uint8_t>(k);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    std::vector<uint8_t> step(degree);
    for (int k = 0; k < degree; ++k) step[k] = static_cast<uint8_t>(k);
    for (size_t k = 0; k < it->size(); ++k) {
      int from = (*it)[k] - 1, to = (*it)[(k + 1) % it->size()] - 1;
      if (from < 0 || from >= degree || to < 0 || to >= degree)
        throw validation_error("cycle entry out of range for degree");
      step[from] = static_cast<uint8_t>(to);
    }
    std::vector<uint8_t> next(degree);
    for (int k = 0; k < degree; ++k) next[k] = step[perm[k]];
    perm = std::move(next);
  }
  return perm;
}

std::vector<std::vector<uint8_t>> parse_generator_list(const std::string& text, int degree) {
  // split on commas outside parentheses
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  std::vector<std::vector<uint8_t>> out;
  for (const auto& p : parts) out.push_back(parse_permutation_cycles(p, degree));
  return out;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

// --- builtin catalog ---------------------------------------------------------------

namespace {

GroupSpec cyclic_spec(int n) {
  GroupSpec s;
  s.format = "perm";
  s.name = "C" + std::to_string(n);
  s.degree = n;
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i + 1;
  s.generators = {{cyc}};
  for (int p = 2; p <= n; ++p)
    if (is_prime(p) && n % p == 0) s.primes.push_back(p);
  return s;
}

GroupSpec dihedral_spec(int order) {
  int m = order / 2;
  GroupSpec s;
  s.format = "perm";
  s.name = "D" + std::to_string(order);
  s.degree = m;
  std::vector<int> rot(m);
  for (int i = 0; i < m; ++i) rot[i] = i + 1;
  std::vector<std::vector<int>> refl;
  for (int i = 2; i <= (m + 1) / 2; ++i)
    if (i != m + 2 - i) refl.push_back({i, m + 2 - i});
  s.generators = {{rot}, refl};
  for (int p = 2; p <= order; ++p)
    if (is_prime(p) && order % p == 0) s.primes.push_back(p);
  return s;
}

GroupSpec symmetric_spec(int n) {
  GroupSpec s;
  s.format = "perm";
  s.name = "S" + std::to_string(n);
  s.degree = n;
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i + 1;
  s.generators = {{cyc}, {{1, 2}}};
  int fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (int p = 2; p <= n; ++p)
    if (is_prime(p) && fact % p == 0) s.primes.push_back(p);
  return s;
}

GroupSpec alternating_spec(int n) {
  GroupSpec s;
  s.format = "perm";
  s.name = "A" + std::to_string(n);
  s.degree = n;
  if (n % 2 == 1) {
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = i + 1;
    s.generators = {{{1, 2, 3}}, {cyc}};
  } else {
    std::vector<int> cyc(n - 1);
    for (int i = 0; i < n - 1; ++i) cyc[i] = i + 2;
    s.generators = {{{1, 2, 3}}, {cyc}};
  }
  int half = 1;
  for (int i = 2; i <= n; ++i) half *= i;
  half /= 2;
  for (int p = 2; p <= n; ++p)
    if (is_prime(p) && half % p == 0) s.primes.push_back(p);
  return s;
}

GroupSpec v4_spec() {
  GroupSpec s;
  s.format = "perm";
  s.name = "V4";
  s.degree = 4;
  s.generators = {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}};
  s.primes = {2};
  return s;
}

GroupSpec q8_spec() {
  // elements 1,-1,i,-i,j,-j,k,-k encoded as (axis, sign)
  auto enc = [](int axis, int sign) { return axis * 2 + (sign < 0 ? 1 : 0); };
  struct Quat {
    int axis;  // 0=1, 1=i, 2=j, 3=k
    int sign;
  };
  auto mul = [](Quat a, Quat b) -> Quat {
    static const int axis_table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_table[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return {axis_table[a.axis][b.axis], a.sign * b.sign * sign_table[a.axis][b.axis]};
  };
  auto dec = [](int e) -> Quat { return {e / 2, e % 2 ? -1 : 1}; };
  GroupSpec s;
  s.format = "cayley";
  s.name = "Q8";
  s.order = 8;
  s.table.assign(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      Quat q = mul(dec(a), dec(b));
      s.table[a][b] = enc(q.axis, q.sign);
    }
  s.primes = {2};
  return s;
}

GroupSpec sl23_spec() {
  // all 2x2 matrices over F_3 with determinant 1; identity listed first
  std::vector<std::array<int, 4>> elems;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (((a * d - b * c) % 3 + 3) % 3 == 1) elems.push_back({a, b, c, d});
  std::array<int, 4> id{1, 0, 0, 1};
  std::stable_partition(elems.begin(), elems.end(),
                        [&](const std::array<int, 4>& m) { return m == id; });
  GroupSpec s;
  s.format = "cayley";
  s.name = "SL(2,3)";
  s.order = static_cast<int>(elems.size());
  s.table.assign(s.order, std::vector<int>(s.order));
  auto index = [&](const std::array<int, 4>& m) {
    return static_cast<int>(std::find(elems.begin(), elems.end(), m) - elems.begin());
  };
  for (int x = 0; x < s.order; ++x)
    for (int y = 0; y < s.order; ++y) {
      const auto &A = elems[x], &B = elems[y];
      std::array<int, 4> C{(A[0] * B[0] + A[1] * B[2]) % 3, (A[0] * B[1] + A[1] * B[3]) % 3,
                           (A[2] * B[0] + A[3] * B[2]) % 3, (A[2] * B[1] + A[3] * B[3]) % 3};
      s.table[x][y] = index(C);
    }
  s.primes = {2, 3};
  return s;
}

GroupSpec gl32_spec() {
  // all invertible 3x3 matrices over F_2, as 9-bit masks; identity first
  auto rank3 = [](int m) {
    int rows[3] = {(m >> 0) & 7, (m >> 3) & 7, (m >> 6) & 7};
    int r = 0;
    for (int col = 2; col >= 0; --col) {
      int pivot = -1;
      for (int i = r; i < 3; ++i)
        if ((rows[i] >> col) & 1) {
          pivot = i;
          break;
        }
      if (pivot < 0) continue;
      std::swap(rows[r], rows[pivot]);
      for (int i = 0; i < 3; ++i)
        if (i != r && ((rows[i] >> col) & 1)) rows[i] ^= rows[r];
      ++r;
    }
    return r;
  };
  std::vector<int> elems;
  const int id = 0b100'010'001;
  elems.push_back(id);
  for (int m = 0; m < 512; ++m)
    if (m != id && rank3(m) == 3) elems.push_back(m);
  auto mulm = [](int x, int y) {
    int out = 0;
    for (int i = 0; i < 3; ++i) {
      int row = (x >> (3 * i)) & 7;
      int acc = 0;
      for (int k = 0; k < 3; ++k)
        if ((row >> k) & 1) acc ^= (y >> (3 * k)) & 7;
      out |= acc << (3 * i);
    }
    return out;
  };
  GroupSpec s;
  s.format = "cayley";
  s.name = "GL(3,2)";
  s.order = static_cast<int>(elems.size());
  std::vector<int> where(512, -1);
  for (int i = 0; i < s.order; ++i) where[elems[i]] = i;
  s.table.assign(s.order, std::vector<int>(s.order));
  for (int x = 0; x < s.order; ++x)
    for (int y = 0; y < s.order; ++y) s.table[x][y] = where[mulm(elems[x], elems[y])];
  s.primes = {2, 3, 7};
  return s;
}

}  // namespace

const std::vector<GroupSpec>& builtin_catalog() {
  static const std::vector<GroupSpec> cat = [] {
    std::vector<GroupSpec> v;
    for (int n = 2; n <= 16; ++n) v.push_back(cyclic_spec(n));
    for (int order : {6, 8, 10, 12, 14, 16}) v.push_back(dihedral_spec(order));
    v.push_back(v4_spec());
    v.push_back(q8_spec());
    v.push_back(symmetric_spec(3));
    v.push_back(symmetric_spec(4));
    v.push_back(symmetric_spec(5));
    v.push_back(alternating_spec(4));
    v.push_back(alternating_spec(5));
    v.push_back(alternating_spec(6));
    v.push_back(sl23_spec());
    v.push_back(gl32_spec());
    return v;
  }();
  return cat;
}

const GroupSpec* catalog_entry(const std::string& name) {
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  std::string want = lower(name);
  for (const auto& s : builtin_catalog())
    if (lower(s.name) == want) return &s;
  return nullptr;
}

// --- reports --------------------------------------------------------------------------

json Report::to_json() const {
  json doc;
  doc["tool"] = "fuselab";
  doc["version"] = version;
  doc["command"] = command;
  doc["input"] = input;
  doc["result"] = result;
  doc["timing_ms"] = timing_ms;
  return doc;
}

Report Report::from_json(const json& doc) {
  Report r;
  r.version = doc.at("version").get<std::string>();
  r.command = doc.at("command").get<std::vector<std::string>>();
  r.input = doc.at("input");
  r.result = doc.at("result");
  r.timing_ms = doc.at("timing_ms").get<double>();
  return r;
}

json subgroup_to_json(const Subgroup& s) {
  json doc;
  doc["order"] = s.order;
  doc["elements"] = s.elements();
  std::vector<std::string> labels;
  for (int e : s.elements()) {
    const std::string& l = s.parent->label(e);
    labels.push_back(l.empty() ? "g" + std::to_string(e) : l);
  }
  doc["labels"] = labels;
  return doc;
}

}  // namespace fuselab
