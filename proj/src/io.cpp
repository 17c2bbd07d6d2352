#include "stonework/io.hpp"

#include <fstream>
#include <sstream>

namespace stonework {

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void parse_error_at(const std::string& text, size_t byte, const std::string& what) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw Error("ParseError",
              "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what,
              {static_cast<long long>(line), static_cast<long long>(col)});
}

int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw Error("ParseError", std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

Manifest parse_manifest_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error_at(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
  }
  return manifest_of(j);
}

Manifest manifest_of(const Json& j) {
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string())
    throw Error("ParseError", "top level must be an object with a 'format' string");
  Manifest m;
  std::string fmt = j["format"].get<std::string>();
  if (fmt.rfind("stonework/", 0) != 0)
    throw Error("ParseError", "unknown format tag '" + fmt + "'");
  m.kind = fmt.substr(std::string("stonework/").size());
  m.version = j.contains("version") ? j["version"].get<int>() : 0;
  if (m.version != kFormatVersion)
    throw Error("VersionUnsupported", "version " + std::to_string(m.version));
  m.payload = j;
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest_text(ss.str());
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("ParseError", "cannot open '" + path + "' for writing");
  out << text;
}

Json manifest_json(const std::string& kind, Json payload) {
  payload["format"] = "stonework/" + kind;
  payload["version"] = kFormatVersion;
  return payload;
}

std::string kind_of(const Manifest& m) { return m.kind; }

Json groupoid_to_json(const Gpd& g) {
  Json j;
  j["units"] = g.unit_labels;
  Json arrows = Json::array();
  for (int a = 0; a < g.n_arrows(); ++a)
    arrows.push_back(Json{{"id", a}, {"src", g.src[a]}, {"tgt", g.tgt[a]}});
  j["arrows"] = arrows;
  j["unit_arrows"] = g.unit_arrow;
  j["inv"] = g.inv;
  Json comp = Json::array();
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int b = 0; b < g.n_arrows(); ++b)
      if (g.at(a, b) >= 0) comp.push_back(Json::array({a, b, g.at(a, b)}));
  j["comp"] = comp;
  return manifest_json("groupoid", std::move(j));
}

Gpd groupoid_from_json(const Json& j) {
  Gpd g;
  if (!j.contains("units") || !j["units"].is_array())
    throw Error("ParseError", "groupoid: missing 'units'");
  for (const auto& u : j["units"]) g.unit_labels.push_back(u.get<std::string>());
  if (!j.contains("arrows")) throw Error("ParseError", "groupoid: missing 'arrows'");
  int na = static_cast<int>(j["arrows"].size());
  g.src.resize(na);
  g.tgt.resize(na);
  for (const auto& a : j["arrows"]) {
    int id = get_int(a, "id");
    if (id < 0 || id >= na) throw Error("ParseError", "groupoid: arrow id out of range");
    g.src[id] = get_int(a, "src");
    g.tgt[id] = get_int(a, "tgt");
  }
  g.unit_arrow = j["unit_arrows"].get<std::vector<int>>();
  g.inv = j["inv"].get<std::vector<int>>();
  g.comp.assign(static_cast<size_t>(na) * na, -1);
  for (const auto& t : j["comp"]) {
    int a = t[0].get<int>(), b = t[1].get<int>(), c = t[2].get<int>();
    if (a < 0 || a >= na || b < 0 || b >= na || c < 0 || c >= na)
      throw Error("ParseError", "groupoid: comp entry out of range");
    g.comp[static_cast<size_t>(a) * na + b] = c;
  }
  validate_groupoid(g);
  return g;
}

Json semigroup_to_json(const InvSgp& s) {
  Json j;
  j["n"] = s.n;
  Json rows = Json::array();
  for (int a = 0; a < s.n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < s.n; ++b) row.push_back(s.at(a, b));
    rows.push_back(row);
  }
  j["mul"] = rows;
  j["zero"] = s.zero;
  return manifest_json("semigroup", std::move(j));
}

InvSgp semigroup_from_json(const Json& j) {
  int n = get_int(j, "n");
  std::vector<int> table;
  for (const auto& row : j["mul"])
    for (const auto& v : row) table.push_back(v.get<int>());
  if (static_cast<int>(table.size()) != n * n)
    throw Error("ParseError", "semigroup: table size mismatch");
  InvSgp s = validate_inverse_semigroup(n, table);
  if (j.contains("zero") && j["zero"].get<int>() != s.zero)
    throw Error("ParseError", "semigroup: declared zero disagrees");
  return s;
}

Json cocycle_to_json(const Cocycle& c) {
  Json j;
  j["modulus"] = c.m;
  Json entries = Json::array();
  // phases in canonical "k/m" form
  for (int a = 0; a < c.n_arrows; ++a)
    for (int b = 0; b < c.n_arrows; ++b)
      if (c.at(a, b) >= 0)
        entries.push_back(Json::array(
            {a, b, std::to_string(c.at(a, b)) + "/" + std::to_string(c.m)}));
  j["entries"] = entries;
  return manifest_json("cocycle", std::move(j));
}

Cocycle cocycle_from_json(const Json& j, const Gpd& g) {
  int m = get_int(j, "modulus");
  int n = g.n_arrows();
  std::vector<int> table(static_cast<size_t>(n) * n, -1);
  for (const auto& t : j["entries"]) {
    int a = t[0].get<int>(), b = t[1].get<int>();
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error("ParseError", "cocycle: arrow out of range");
    int k;
    if (t[2].is_string()) {
      std::string p = t[2].get<std::string>();
      size_t slash = p.find('/');
      if (slash == std::string::npos)
        throw Error("ParseError", "cocycle: phase must be 'k/m'");
      k = std::stoi(p.substr(0, slash));
      if (std::stoi(p.substr(slash + 1)) != m)
        throw Error("ParseError", "cocycle: phase denominator must equal the modulus");
    } else {
      k = t[2].get<int>();
    }
    table[static_cast<size_t>(a) * n + b] = k;
  }
  return validate_cocycle(g, m, table);
}

Json measure_to_json(const Measure& m) {
  Json j;
  Json w = Json::array();
  for (const auto& x : m.w) w.push_back(rat_to_string(x));
  j["weights"] = w;
  return manifest_json("measure", std::move(j));
}

Measure measure_from_json(const Json& j) {
  Measure m;
  for (const auto& x : j["weights"]) m.w.push_back(rat_from_string(x.get<std::string>()));
  m.require_faithful();
  return m;
}

Json element_to_json(const AlgElem& f) {
  Json j;
  j["modulus"] = f.m;
  Json entries = Json::array();
  for (size_t a = 0; a < f.c.size(); ++a) {
    if (f.c[a].is_zero()) continue;
    Json coefs = Json::array();
    for (const auto& r : f.c[a].coef()) coefs.push_back(rat_to_string(r));
    entries.push_back(Json::array({static_cast<int>(a), coefs}));
  }
  j["entries"] = entries;
  return manifest_json("element", std::move(j));
}

AlgElem element_from_json(const Json& j, const Gpd& g) {
  int m = get_int(j, "modulus");
  ConvCtx ctx = ConvCtx::untwisted(g, m);
  AlgElem f = AlgElem::zero(ctx);
  int deg = CycField::get(m).degree();
  for (const auto& e : j["entries"]) {
    int a = e[0].get<int>();
    if (a < 0 || a >= g.n_arrows()) throw Error("ParseError", "element: arrow out of range");
    const auto& coefs = e[1];
    if (static_cast<int>(coefs.size()) != deg)
      throw Error("ParseError", "element: coefficient vector must have length phi(m)");
    Cyc v = Cyc::zero(m);
    for (int i = 0; i < deg; ++i)
      v += Cyc::zeta(i, m) * rat_from_string(coefs[i].get<std::string>());
    f.c[a] = v;
  }
  return f;
}

Json algebra_to_json(const AlgebraFile& a) {
  Json j;
  j["modulus"] = a.alg.m;
  j["blocks"] = a.alg.blocks;
  j["masa_atoms"] = a.masa.atoms;
  Json st = Json::array();
  for (const auto& x : a.state.w) st.push_back(rat_to_string(x));
  j["state"] = st;
  return manifest_json("algebra", std::move(j));
}

AlgebraFile algebra_from_json(const Json& j) {
  AlgebraFile a;
  a.alg.m = get_int(j, "modulus");
  a.alg.blocks = j["blocks"].get<std::vector<int>>();
  for (int b : a.alg.blocks)
    if (b < 1) throw Error("ParseError", "algebra: block sizes must be positive");
  a.masa.atoms = j["masa_atoms"].get<std::vector<std::vector<int>>>();
  for (const auto& x : j["state"]) a.state.w.push_back(rat_from_string(x.get<std::string>()));
  return a;
}

Json bisections_to_json(const std::vector<Bisection>& s) {
  Json j;
  j["sets"] = s;
  return manifest_json("bisections", std::move(j));
}

std::vector<Bisection> bisections_from_json(const Json& j, const Gpd& g) {
  std::vector<Bisection> out;
  for (const auto& set : j["sets"]) {
    Bisection b = set.get<std::vector<int>>();
    std::sort(b.begin(), b.end());
    if (!is_bisection(g, b)) throw Error("ParseError", "bisections: set is not a bisection");
    out.push_back(std::move(b));
  }
  return out;
}

Json action_to_json(const MultAction& a) {
  Json j;
  j["anchor"] = a.anchor;
  Json map = Json::array();
  for (int e = 0; e < a.h.n_arrows(); ++e)
    for (int x = 0; x < a.g.n_units(); ++x)
      if (a.f_at(e, x) >= 0) map.push_back(Json::array({e, x, a.f_at(e, x)}));
  j["map"] = map;
  return manifest_json("action", std::move(j));
}

MultAction action_from_json(const Json& j, const Gpd& h, const Gpd& g) {
  MultAction a;
  a.h = h;
  a.g = g;
  a.anchor = j["anchor"].get<std::vector<int>>();
  a.f.assign(static_cast<size_t>(h.n_arrows()) * g.n_units(), -1);
  for (const auto& t : j["map"]) {
    int e = t[0].get<int>(), x = t[1].get<int>(), arr = t[2].get<int>();
    a.f[static_cast<size_t>(e) * g.n_units() + x] = arr;
  }
  validate_mult_action(a);
  return a;
}

}  // namespace stonework
