#include "rdc/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rdc/error.hpp"

namespace rdc::io {

Theory parse_theory(const std::string& name) {
  if (name == "bredon") return Theory::kBredon;
  if (name == "deligne") return Theory::kDeligne;
  if (name == "borel") return Theory::kBorel;
  throw malformed("unknown theory '" + name + "' (expected bredon, deligne or borel)");
}

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::kBredon: return "bredon";
    case Theory::kDeligne: return "deligne";
    case Theory::kBorel: return "borel";
  }
  return "";
}

GroupDescriptor point_group(Theory t, BiDegree d) {
  switch (t) {
    case Theory::kBredon: return bredon_point_group(d);
    case Theory::kDeligne: return deligne_point_group(d);
    case Theory::kBorel: return borel_point_group(d);
  }
  return {};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw malformed(std::string("invalid JSON: ") + e.what());
  }
}

namespace {

Json z_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

mpz_class z_from(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? mpz_class(j.get<std::uint64_t>()) : mpz_class(j.get<std::int64_t>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  throw malformed(std::string(what) + " must be an integer");
}

std::int64_t i_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw malformed(std::string(what) + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw malformed(std::string(what) + " is out of range");
  return j.get<std::int64_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json q_json(const mpq_class& q) { return Json{{"num", z_json(q.get_num())}, {"den", z_json(q.get_den())}}; }

mpq_class q_from(const Json& j) {
  if (j.is_object()) {
    mpq_class q(z_from(field(j, "num"), "num"), z_from(field(j, "den"), "den"));
    if (q.get_den() == 0) throw malformed("zero denominator");
    q.canonicalize();
    return q;
  }
  if (j.is_array()) {
    if (j.size() != 2) throw malformed("a rational pair needs exactly [num, den]");
    const mpz_class den = z_from(j[1], "den");
    if (den == 0) throw malformed("zero denominator");
    mpq_class q(z_from(j[0], "num"), den);
    q.canonicalize();
    return q;
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  return mpq_class(z_from(j, "rational"));
}

Json bidegree_json(BiDegree d) { return Json{{"n", d.n}, {"p", d.p}}; }

}  // namespace

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  mpq_class q;
  const auto slash = s.find('/');
  mpz_class num, den = 1;
  const std::string ns = s.substr(0, slash);
  const std::string body = !ns.empty() && ns[0] == '+' ? ns.substr(1) : ns;
  if (body.empty() || num.set_str(body, 10) != 0) throw malformed("invalid rational '" + text + "'");
  if (slash != std::string::npos && (den.set_str(s.substr(slash + 1), 10) != 0 || s.substr(slash + 1).empty()))
    throw malformed("invalid rational '" + text + "'");
  if (den == 0) throw malformed("zero denominator in '" + text + "'");
  q = mpq_class(num, den);
  q.canonicalize();
  return q;
}

// --------------------------------------------------------------------------

Json to_json(const GroupDescriptor& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion()) torsion.push_back(z_json(t));
  return Json{{"free_rank", g.free_rank()},
              {"torsion", torsion},
              {"real_rank", g.real_rank()},
              {"circle_factors", g.circle_factors()}};
}

GroupDescriptor group_from_json(const Json& j) {
  if (!j.is_object()) throw malformed("a group must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "free_rank" && key != "torsion" && key != "real_rank" && key != "circle_factors")
      throw malformed("unknown group field '" + key + "'");
  std::vector<mpz_class> torsion;
  std::vector<std::int64_t> circles;
  if (j.contains("torsion")) {
    if (!j["torsion"].is_array()) throw malformed("torsion must be a list");
    for (const auto& t : j["torsion"]) torsion.push_back(z_from(t, "torsion order"));
  }
  if (j.contains("circle_factors")) {
    if (!j["circle_factors"].is_array()) throw malformed("circle_factors must be a list");
    for (const auto& c : j["circle_factors"]) circles.push_back(i_from(c, "circle weight"));
  }
  return GroupDescriptor::from_parts(j.contains("free_rank") ? i_from(j["free_rank"], "free_rank") : 0, torsion,
                                     j.contains("real_rank") ? i_from(j["real_rank"], "real_rank") : 0, circles);
}

Json to_json(const BredonPointClass& c) {
  Json out = Json::array();
  for (const auto& [e, k] : c.pos_terms())
    out.push_back({{"sector", "pos"}, {"a", e.first}, {"b", e.second}, {"coeff", z_json(k)}});
  for (const auto& [b, k] : c.alpha_terms()) out.push_back({{"sector", "alpha"}, {"a", 0}, {"b", b}, {"coeff", z_json(k)}});
  for (const auto& e : c.theta_terms())
    out.push_back({{"sector", "theta"}, {"a", e.first}, {"b", e.second}, {"coeff", 1}});
  return out;
}

BredonPointClass bredon_from_json(const Json& j) {
  if (!j.is_array()) throw malformed("a Bredon class must be a list of terms");
  BredonPointClass out;
  for (const auto& t : j) {
    const std::string sector = field(t, "sector").get<std::string>();
    const std::int64_t a = t.contains("a") ? i_from(t["a"], "a") : 0;
    const std::int64_t b = t.contains("b") ? i_from(t["b"], "b") : 0;
    const mpz_class k = t.contains("coeff") ? z_from(t["coeff"], "coeff") : mpz_class(1);
    if (a < 0 || b < 0) throw malformed("monomial exponents must be nonnegative");
    if (sector == "pos") out += BredonPointClass::eps_tau(a, b, k);
    else if (sector == "alpha") {
      if (a != 0) throw malformed("alpha-sector terms have a = 0");
      out += BredonPointClass::alpha(b, k);
    } else if (sector == "theta") {
      if (k % 2 != 0) out += BredonPointClass::theta(a, b);
    } else {
      throw malformed("unknown sector '" + sector + "'");
    }
  }
  return out;
}

Json to_json(const DelignePointClass& c) {
  using C = DelignePointClass;
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, C::Unit>) return {{"kind", "unit"}, {"k", z_json(v.k)}};
        else if constexpr (std::is_same_v<T, C::RUnit>) return {{"kind", "runit"}, {"p", v.p}, {"value", q_json(v.value)}};
        else if constexpr (std::is_same_v<T, C::Circle>) return {{"kind", "circle"}, {"p", v.p}, {"q", q_json(v.q)}};
        else if constexpr (std::is_same_v<T, C::Torsion>) return {{"kind", "torsion"}, {"n", v.n}, {"p", v.p}};
        else if constexpr (std::is_same_v<T, C::NegCone>) return {{"kind", "neg_cone"}, {"class", to_json(v.c)}};
        else return {{"kind", "zero"}, {"n", v.d.n}, {"p", v.d.p}};
      },
      c.value());
}

Json to_json(const DeligneProduct& p) {
  if (const auto* u = std::get_if<Undetermined>(&p))
    return {{"kind", "undetermined"}, {"left", bidegree_json(u->left)}, {"right", bidegree_json(u->right)}};
  return to_json(std::get<DelignePointClass>(p));
}

DelignePointClass deligne_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "unit") return DelignePointClass::unit(z_from(field(j, "k"), "k"));
  if (kind == "runit") return DelignePointClass::runit(i_from(field(j, "p"), "p"), q_from(field(j, "value")));
  if (kind == "circle") return DelignePointClass::circle(i_from(field(j, "p"), "p"), q_from(field(j, "q")));
  if (kind == "torsion") return DelignePointClass::torsion(i_from(field(j, "n"), "n"), i_from(field(j, "p"), "p"));
  if (kind == "neg_cone") {
    const BredonPointClass c = bredon_from_json(field(j, "class"));
    if (c.is_zero()) throw malformed("neg_cone class is zero; use kind \"zero\"");
    return DelignePointClass::neg_cone(c);
  }
  if (kind == "zero") return DelignePointClass::zero({i_from(field(j, "n"), "n"), i_from(field(j, "p"), "p")});
  throw malformed("unknown Deligne class kind '" + kind + "'");
}

Json to_json(const BundleClass& c) {
  Json out = Json::array();
  for (const auto& [e, coeff] : c.terms) out.push_back({{"exponents", e}, {"coeff", to_json(coeff)}});
  return out;
}

// --------------------------------------------------------------------------

Json to_json(const IntegerMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(z_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

namespace {

IntegerMatrix matrix_rows(const Json& rows, std::optional<std::size_t> cols_if_empty) {
  if (!rows.is_array()) throw malformed("matrix entries must be a list of rows");
  std::vector<std::vector<mpz_class>> data;
  for (const auto& r : rows) {
    if (!r.is_array()) throw malformed("matrix rows must be lists");
    std::vector<mpz_class> row;
    for (const auto& v : r) row.push_back(z_from(v, "matrix entry"));
    if (!data.empty() && row.size() != data.front().size()) throw malformed("matrix rows have different lengths");
    data.push_back(std::move(row));
  }
  const std::size_t cols = data.empty() ? cols_if_empty.value_or(0) : data.front().size();
  IntegerMatrix m(data.size(), cols);
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = data[i][j];
  return m;
}

}  // namespace

IntegerMatrix matrix_from_json(const Json& j) {
  if (j.is_array()) return matrix_rows(j, std::nullopt);
  const auto rows = static_cast<std::size_t>(i_from(field(j, "rows"), "rows"));
  const auto cols = static_cast<std::size_t>(i_from(field(j, "cols"), "cols"));
  if (j.contains("entries") && !j["entries"].empty()) {
    IntegerMatrix m = matrix_rows(j["entries"], cols);
    if (m.rows() != rows || m.cols() != cols) throw malformed("matrix entries do not match rows x cols");
    return m;
  }
  return IntegerMatrix(rows, cols);
}

Json smith_to_json(const SmithForm& f) {
  Json factors = Json::array();
  for (const auto& d : f.invariant_factors()) factors.push_back(z_json(d));
  return {{"U", to_json(f.U)}, {"S", to_json(f.S)}, {"V", to_json(f.V)}, {"rank", f.rank},
          {"invariant_factors", factors}};
}

std::string smith_to_text(const SmithForm& f) {
  std::ostringstream os;
  os << "invariant factors:";
  for (const auto& d : f.invariant_factors()) os << ' ' << d.get_str();
  if (f.rank == 0) os << " (none)";
  os << "\nrank: " << f.rank << "\nS = " << f.S.to_string() << "\nU = " << f.U.to_string()
     << "\nV = " << f.V.to_string() << '\n';
  return os.str();
}

// --------------------------------------------------------------------------

ChowPresentation chow_from_json(const Json& j) {
  std::vector<ChowBasisElement> basis;
  for (const auto& b : field(j, "basis")) {
    basis.push_back({field(b, "name").get<std::string>(), i_from(field(b, "codim"), "codim")});
  }
  // An implicit unit "1" is added when no codim-0 element is listed.
  if (std::none_of(basis.begin(), basis.end(), [](const auto& b) { return b.codim == 0; }))
    basis.insert(basis.begin(), {"1", 0});
  auto index = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == name) return i;
    throw malformed("unknown basis element '" + name + "'");
  };
  ChowPresentation::ProductTable table;
  if (j.contains("products")) {
    if (!j["products"].is_object()) throw malformed("products must be an object keyed by \"a,b\"");
    for (const auto& [key, value] : j["products"].items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) throw malformed("product key '" + key + "' must read \"a,b\"");
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(' '));
        s.erase(s.find_last_not_of(' ') + 1);
        return s;
      };
      const std::size_t a = index(trim(key.substr(0, comma))), b = index(trim(key.substr(comma + 1)));
      std::map<std::size_t, mpz_class> comb;
      for (const auto& term : value)
        comb[index(field(term, "elem").get<std::string>())] += z_from(field(term, "coeff"), "coeff");
      ChowCombination c;
      for (const auto& [k, v] : comb)
        if (v != 0) c.push_back({k, v});
      if (table.count({a, b})) throw malformed("product '" + key + "' given twice");
      table[{a, b}] = c;
    }
  }
  const std::string unit = j.contains("unit") ? j["unit"].get<std::string>() : "";
  return ChowPresentation::create(basis, table, unit);
}

Json to_json(const ChowPresentation& c) {
  Json basis = Json::array();
  for (const auto& b : c.basis()) basis.push_back({{"name", b.name}, {"codim", b.codim}});
  Json products = Json::object();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i; j < c.size(); ++j) {
      if (c.mul(i, j).empty()) continue;
      Json terms = Json::array();
      for (const auto& [k, v] : c.mul(i, j)) terms.push_back({{"elem", c.basis()[k].name}, {"coeff", z_json(v)}});
      products[c.basis()[i].name + "," + c.basis()[j].name] = terms;
    }
  return {{"basis", basis}, {"products", products}, {"unit", c.basis()[c.unit()].name}};
}

// --------------------------------------------------------------------------

std::vector<SequenceNode> sequence_from_json(const Json& j) {
  const Json& nodes = j.is_object() ? field(j, "nodes") : j;
  if (!nodes.is_array()) throw malformed("a sequence is a list of nodes");
  std::vector<SequenceNode> out;
  for (const auto& n : nodes) {
    SequenceNode node;
    if (!n.is_object()) throw malformed("sequence nodes must be objects");
    if (n.contains("group") && !(n["group"].is_string() && n["group"] == "unknown"))
      node.group = group_from_json(n["group"]);
    out.push_back(node);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Json& n = nodes[i];
    if (!n.contains("map") || (n["map"].is_string() && n["map"] == "unknown")) {
      if (i + 1 < out.size() && n.contains("map")) continue;  // explicit unknown
      if (i + 1 == out.size()) continue;
      // Missing map: zero when both ends are known.
      if (out[i].group && out[i + 1].group) {
        const auto& s = *out[i].group;
        const auto& t = *out[i + 1].group;
        out[i].map_to_next = Homomorphism{
            IntegerMatrix(static_cast<std::size_t>(t.fg_generator_count()), static_cast<std::size_t>(s.fg_generator_count())),
            IntegerMatrix(static_cast<std::size_t>(continuous_dim(t)),
                          static_cast<std::size_t>(s.fg_generator_count() + continuous_dim(s))),
            std::nullopt};
      }
      continue;
    }
    const Json& m = n["map"];
    if (!m.is_object()) throw malformed("map " + std::to_string(i) + " must be an object or \"unknown\"");
    const std::optional<GroupDescriptor>& s = out[i].group;
    const std::optional<GroupDescriptor> t = i + 1 < out.size() ? out[i + 1].group : std::nullopt;
    auto shaped = [&](const char* key, std::optional<std::size_t> rows, std::optional<std::size_t> cols) {
      IntegerMatrix mat = m.contains(key) ? matrix_rows(m[key], cols) : IntegerMatrix(0, 0);
      if (mat.rows() == 0 && rows && cols) return IntegerMatrix(*rows, *cols);
      return mat;
    };
    auto opt = [](std::optional<std::int64_t> v) -> std::optional<std::size_t> {
      if (!v) return std::nullopt;
      return static_cast<std::size_t>(*v);
    };
    Homomorphism h;
    h.fg = shaped("fg", t ? opt(t->fg_generator_count()) : std::nullopt, s ? opt(s->fg_generator_count()) : std::nullopt);
    if (m.contains("real_rank")) h.real_rank = i_from(m["real_rank"], "real_rank");
    if (m.contains("cont") || !h.real_rank) {
      std::optional<std::size_t> cols;
      if (s) cols = static_cast<std::size_t>(s->fg_generator_count() + continuous_dim(*s));
      h.cont = shaped("cont", t ? opt(continuous_dim(*t)) : std::nullopt, cols);
    }
    out[i].map_to_next = h;
  }
  return out;
}

namespace {

std::string status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::kExact: return "exact";
    case NodeStatus::kInexact: return "inexact";
    case NodeStatus::kNotComplex: return "not_complex";
  }
  return "";
}

}  // namespace

Json to_json(const ExactnessReport& r) {
  Json nodes = Json::array();
  for (const auto& n : r.nodes) {
    Json node{{"index", n.index}, {"status", status_name(n.status)}};
    if (n.homology) node["homology"] = to_json(*n.homology);
    if (!n.note.empty()) node["note"] = n.note;
    nodes.push_back(node);
  }
  return {{"exact", r.exact()}, {"nodes", nodes}};
}

std::string report_to_text(const ExactnessReport& r) {
  std::ostringstream os;
  os << "node  status       homology\n";
  for (const auto& n : r.nodes) {
    std::string status = status_name(n.status);
    status.resize(std::max<std::size_t>(status.size(), 12), ' ');
    os << n.index << std::string(n.index < 10 ? 5 : 4, ' ') << status << ' '
       << (n.homology ? n.homology->to_text() : "-");
    if (!n.note.empty()) os << "  (" << n.note << ')';
    os << '\n';
  }
  os << (r.exact() ? "exact" : "not exact") << '\n';
  return os.str();
}

FieldInput field_from_json(const Json& j) {
  if (!j.is_object()) throw malformed("a field spec must be a JSON object");
  std::optional<NumberFieldSpec> spec;
  if (j.contains("poly")) {
    std::vector<mpz_class> coeffs;
    for (const auto& c : j["poly"]) coeffs.push_back(z_from(c, "polynomial coefficient"));
    spec = NumberFieldSpec::from_poly(coeffs);
  } else if (j.contains("signature")) {
    spec = NumberFieldSpec::from_signature(i_from(field(j["signature"], "s"), "s"), i_from(field(j["signature"], "t"), "t"));
  } else {
    throw malformed("a field spec needs \"poly\" or \"signature\"");
  }
  FieldInput in{*spec, {}};
  if (j.contains("units")) {
    for (const auto& u : j["units"]) {
      if (!u.is_array()) throw malformed("each unit is a list of rational coefficients");
      std::vector<mpq_class> c;
      for (const auto& q : u) c.push_back(q_from(q));
      in.units.push_back(std::move(c));
    }
  }
  return in;
}

mpq_class rational_from_json(const Json& j) { return q_from(j); }

// --------------------------------------------------------------------------
// Literals.

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
    std::string out = s_.substr(i_, j - i_);
    i_ = j;
    return out;
  }
  mpz_class integer() {
    skip();
    std::size_t j = i_;
    if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
    const std::size_t digits = j;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == digits) fail("expected an integer");
    mpz_class z(s_.substr(s_[i_] == '+' ? i_ + 1 : i_, j - (s_[i_] == '+' ? i_ + 1 : i_)));
    i_ = j;
    return z;
  }
  std::int64_t small_integer() {
    const mpz_class z = integer();
    if (!z.fits_slong_p()) fail("integer out of range");
    return z.get_si();
  }
  mpq_class rational() {
    const mpz_class num = integer();
    mpz_class den = 1;
    if (accept('/')) den = integer();
    if (den == 0) fail("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw malformed("cannot parse '" + s_ + "' at position " + std::to_string(i_) + ": " + why);
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

BredonPointClass parse_term(Lexer& lx) {
  mpz_class coeff = 1;
  std::int64_t eps = 0, tau = 0, eps_inv = 0, tau_inv = 0;
  std::vector<bool> specials;  // true = alpha, false = theta
  bool first = true;
  do {
    if (lx.accept('-')) coeff = -coeff;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      coeff *= lx.integer();
    } else {
      const std::string name = lx.ident();
      if (name.empty()) lx.fail(first ? "expected a term" : "expected a factor after '*'");
      std::int64_t power = 1;
      if (lx.accept('^')) power = lx.small_integer();
      if (power < 0) lx.fail("negative powers are written with epsinv / tauinv");
      if (name == "eps") eps = checked_add(eps, power);
      else if (name == "tau") tau = checked_add(tau, power);
      else if (name == "epsinv") eps_inv = checked_add(eps_inv, power);
      else if (name == "tauinv") tau_inv = checked_add(tau_inv, power);
      else if (name == "alpha" || name == "theta") {
        for (std::int64_t k = 0; k < power; ++k) specials.push_back(name == "alpha");
      } else {
        lx.fail("unknown symbol '" + name + "'");
      }
    }
    first = false;
  } while (lx.accept('*'));

  if (specials.empty()) {
    if (eps_inv > 0 || tau_inv > 0) lx.fail("epsinv and tauinv only occur with alpha or theta");
    return BredonPointClass::eps_tau(eps, tau, coeff);
  }
  BredonPointClass acc;
  if (specials.front()) {
    if (eps_inv > 0) lx.fail("epsinv does not occur with alpha");
    acc = BredonPointClass::alpha(tau_inv);
  } else {
    acc = BredonPointClass::theta(eps_inv, tau_inv);
  }
  for (std::size_t k = 1; k < specials.size(); ++k)
    acc = bredon_mul(acc, specials[k] ? BredonPointClass::alpha(0) : BredonPointClass::theta(0, 0));
  return bredon_mul(acc, BredonPointClass::eps_tau(eps, tau, coeff));
}

BredonPointClass parse_sum(Lexer& lx) {
  BredonPointClass out;
  bool negate = lx.accept('-');
  for (;;) {
    BredonPointClass t = parse_term(lx);
    out += negate ? -t : t;
    if (lx.accept('+')) negate = false;
    else if (lx.accept('-')) negate = true;
    else break;
  }
  return out;
}

std::map<std::string, mpq_class> parse_args(Lexer& lx) {
  std::map<std::string, mpq_class> args;
  lx.expect('(');
  if (lx.accept(')')) return args;
  do {
    const std::string key = lx.ident();
    if (key.empty()) lx.fail("expected an argument name");
    lx.expect('=');
    if (args.count(key)) lx.fail("argument '" + key + "' repeated");
    args[key] = lx.rational();
  } while (lx.accept(','));
  lx.expect(')');
  return args;
}

std::int64_t int_arg(const std::map<std::string, mpq_class>& args, const std::string& key, const std::string& text) {
  auto it = args.find(key);
  if (it == args.end()) throw malformed("'" + text + "' needs argument " + key);
  if (it->second.get_den() != 1 || !it->second.get_num().fits_slong_p())
    throw malformed("argument " + key + " of '" + text + "' must be an integer");
  return it->second.get_num().get_si();
}

mpq_class q_arg(const std::map<std::string, mpq_class>& args, const std::string& key, const std::string& text) {
  auto it = args.find(key);
  if (it == args.end()) throw malformed("'" + text + "' needs argument " + key);
  return it->second;
}

void only_args(const std::map<std::string, mpq_class>& args, std::initializer_list<const char*> allowed,
               const std::string& text) {
  for (const auto& [k, v] : args)
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw malformed("unexpected argument " + k + " in '" + text + "'");
}

}  // namespace

BredonPointClass parse_bredon(const std::string& text) {
  Lexer lx(text);
  if (lx.done()) throw malformed("empty class literal");
  BredonPointClass c = parse_sum(lx);
  if (!lx.done()) lx.fail("unexpected trailing input");
  return c;
}

DelignePointClass parse_deligne(const std::string& text) {
  Lexer probe(text);
  const std::string head = probe.ident();
  if (probe.peek() == '(' &&
      (head == "runit" || head == "circle" || head == "torsion" || head == "zero" || head == "unit")) {
    const auto args = parse_args(probe);
    if (!probe.done()) probe.fail("unexpected trailing input");
    if (head == "runit") {
      only_args(args, {"p", "v"}, text);
      return DelignePointClass::runit(int_arg(args, "p", text), q_arg(args, "v", text));
    }
    if (head == "circle") {
      only_args(args, {"p", "q"}, text);
      return DelignePointClass::circle(int_arg(args, "p", text), q_arg(args, "q", text));
    }
    if (head == "torsion") {
      only_args(args, {"n", "p"}, text);
      return DelignePointClass::torsion(int_arg(args, "n", text), int_arg(args, "p", text));
    }
    if (head == "unit") {
      only_args(args, {"k"}, text);
      return DelignePointClass::unit(int_arg(args, "k", text));
    }
    only_args(args, {"n", "p"}, text);
    return DelignePointClass::zero({int_arg(args, "n", text), int_arg(args, "p", text)});
  }
  const BredonPointClass c = parse_bredon(text);
  if (c.is_zero()) return DelignePointClass::unit(0);
  const auto d = c.bidegree();
  if (!d) throw malformed("'" + text + "' is not homogeneous");
  if (d->p > 0 && d->n <= 1)
    throw malformed("'" + text + "' lies in " + d->to_string() +
                    ", where Deligne and Bredon classes differ; use runit(...), circle(...) or zero(...)");
  return DelignePointClass::lift(c, *d);
}

namespace {

std::string power(const std::string& base, std::int64_t k) {
  return k == 1 ? base : base + "^" + std::to_string(k);
}

std::string join_factors(const std::vector<std::string>& f) {
  std::string out;
  for (const auto& s : f) out += (out.empty() ? "" : "*") + s;
  return out;
}

std::string with_coeff(const mpz_class& k, const std::string& mono) {
  if (mono.empty()) return k.get_str();
  if (k == 1) return mono;
  if (k == -1) return "-" + mono;
  return k.get_str() + "*" + mono;
}

}  // namespace

std::string to_text(const BredonPointClass& c) {
  std::vector<std::string> terms;
  for (const auto& [e, k] : c.pos_terms()) {
    std::vector<std::string> f;
    if (e.first > 0) f.push_back(power("eps", e.first));
    if (e.second > 0) f.push_back(power("tau", e.second));
    terms.push_back(with_coeff(k, join_factors(f)));
  }
  for (const auto& [b, k] : c.alpha_terms()) {
    std::vector<std::string> f;
    if (b > 0) f.push_back(power("tauinv", b));
    f.push_back("alpha");
    terms.push_back(with_coeff(k, join_factors(f)));
  }
  for (const auto& e : c.theta_terms()) {
    std::vector<std::string> f;
    if (e.first > 0) f.push_back(power("epsinv", e.first));
    if (e.second > 0) f.push_back(power("tauinv", e.second));
    f.push_back("theta");
    terms.push_back(join_factors(f));
  }
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) out += (out.empty() ? "" : " + ") + t;
  return out;
}

std::string to_text(const DelignePointClass& c) {
  using C = DelignePointClass;
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, C::Unit>) return v.k.get_str();
        else if constexpr (std::is_same_v<T, C::RUnit>)
          return "runit(p=" + std::to_string(v.p) + ",v=" + v.value.get_str() + ")";
        else if constexpr (std::is_same_v<T, C::Circle>)
          return "circle(p=" + std::to_string(v.p) + ",q=" + v.q.get_str() + ")";
        else if constexpr (std::is_same_v<T, C::Torsion>)
          return "torsion(n=" + std::to_string(v.n) + ",p=" + std::to_string(v.p) + ")";
        else if constexpr (std::is_same_v<T, C::NegCone>) return to_text(v.c);
        else return "zero(n=" + std::to_string(v.d.n) + ",p=" + std::to_string(v.d.p) + ")";
      },
      c.value());
}

std::string to_text(const DeligneProduct& p) {
  if (const auto* u = std::get_if<Undetermined>(&p))
    return "undetermined(" + u->left.to_string() + " x " + u->right.to_string() + ")";
  return to_text(std::get<DelignePointClass>(p));
}

std::string to_text(const BundleClass& c, const BundleRing& ring) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [e, coeff] : c.terms) {
    std::vector<std::string> f;
    for (std::size_t i = 0; i < e.size() && i < ring.rank(); ++i)
      if (e[i] > 0) f.push_back(power(ring.factors()[i].name, e[i]));
    const std::string mono = join_factors(f);
    std::string ct = to_text(coeff);
    if (ct.find(' ') != std::string::npos) ct = "(" + ct + ")";
    out += (out.empty() ? "" : " + ") + (mono.empty() ? ct : ct + "*" + mono);
  }
  return out;
}

// --------------------------------------------------------------------------
// Tables.

namespace {

void check_window(const Window& w) {
  if (w.nmin > w.nmax || w.pmin > w.pmax) throw malformed("empty table window");
  if (w.nmax - w.nmin > 400 || w.pmax - w.pmin > 400) throw malformed("table windows are limited to 401 x 401");
}

}  // namespace

Json table_json(Theory t, const Window& w) {
  check_window(w);
  Json cells = Json::array();
  for (std::int64_t p = w.pmax; p >= w.pmin; --p)
    for (std::int64_t n = w.nmin; n <= w.nmax; ++n)
      cells.push_back({{"group", to_json(point_group(t, {n, p}))}, {"n", n}, {"p", p}});
  return {{"cells", cells},
          {"theory", theory_name(t)},
          {"window", {{"nmin", w.nmin}, {"nmax", w.nmax}, {"pmin", w.pmin}, {"pmax", w.pmax}}}};
}

std::string cell_label(const GroupDescriptor& g) {
  if (g.is_zero()) return "0";
  if (g == GroupDescriptor::integers()) return "Z";
  if (g == GroupDescriptor::cyclic(2)) return "Z^x";
  if (g == GroupDescriptor::real_units()) return "R^x";
  if (g.free_rank() == 0 && g.torsion().empty() && g.real_rank() == 0 && g.circle_factors().size() == 1)
    return "R/Z(" + std::to_string(g.circle_factors()[0]) + ")";
  return g.to_text();
}

std::string generator_label(Theory t, BiDegree d) {
  if (t == Theory::kBorel) throw malformed("generators are listed for bredon and deligne only");
  const GroupDescriptor g = point_group(t, d);
  if (g.is_zero()) return "0";
  if (t == Theory::kDeligne && d.p > 0 && d.n == 1) return cell_label(g);
  auto part = [](const char* sym, std::int64_t k) -> std::string {
    if (k == 0) return "";
    return k == 1 ? std::string(sym) : std::string(sym) + "^" + std::to_string(k);
  };
  auto words = [](std::vector<std::string> parts) {
    std::string out;
    for (const auto& s : parts)
      if (!s.empty()) out += (out.empty() ? "" : " ") + s;
    return out;
  };
  if (d.n >= 0 && d.p >= d.n && is_even(d.p - d.n)) {
    const std::string s = words({part("tau", (d.p - d.n) / 2), part("eps", d.n)});
    return s.empty() ? "1" : s;
  }
  if (d.n == 0 && d.p <= -2 && is_even(d.p)) return "2tau^" + std::to_string(d.p / 2);
  // eps^-a tau^-b theta at (-a, -a - 2b - 3)
  const std::int64_t a = -d.n, b = (d.n - d.p - 3) / 2;
  std::string s = words({a ? (a == 1 ? "eps^-1" : "eps^-" + std::to_string(a)) : "",
                         b ? (b == 1 ? "tau^-1" : "tau^-" + std::to_string(b)) : "", "theta"});
  return s;
}

std::string table_text(Theory t, const Window& w, bool generators) {
  check_window(w);
  std::vector<std::vector<std::string>> rows;
  std::size_t width = 1;
  for (std::int64_t p = w.pmax; p >= w.pmin; --p) {
    std::vector<std::string> row;
    for (std::int64_t n = w.nmin; n <= w.nmax; ++n) {
      std::string cell = generators ? generator_label(t, {n, p}) : cell_label(point_group(t, {n, p}));
      width = std::max(width, cell.size());
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  std::size_t label = 1;
  for (std::int64_t p : {w.pmin, w.pmax}) label = std::max(label, std::to_string(p).size());
  for (std::int64_t n : {w.nmin, w.nmax}) width = std::max(width, std::to_string(n).size());
  auto pad_left = [](const std::string& s, std::size_t k) { return std::string(k - std::min(k, s.size()), ' ') + s; };
  auto pad_right = [](const std::string& s, std::size_t k) { return s + std::string(k - std::min(k, s.size()), ' '); };

  std::ostringstream os;
  std::int64_t p = w.pmax;
  for (const auto& row : rows) {
    std::string line = pad_left(std::to_string(p), label) + " |";
    for (const auto& c : row) line += "  " + pad_right(c, width);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
    if (p == 0 && w.pmin < 0) {
      os << std::string(label + 1, '-') << '+' << std::string((width + 2) * row.size(), '-') << '\n';
    }
    --p;
  }
  std::string axis = std::string(label, ' ') + " +";
  os << axis << std::string((width + 2) * rows.front().size(), '-') << '\n';
  std::string nline = std::string(label + 2, ' ');
  for (std::int64_t n = w.nmin; n <= w.nmax; ++n) nline += "  " + pad_right(std::to_string(n), width);
  while (!nline.empty() && nline.back() == ' ') nline.pop_back();
  os << nline << '\n';
  os << "rows: weight p, columns: degree n (" << theory_name(t) << ")\n";
  if (generators)
    os << "generators as monomials in eps, tau, theta; 2tau^-k is alpha tau^-(k-1); R^x and R/Z(w) as groups\n";
  else
    os << "Z^x = Z/2, R^x = R x Z/2 (units of R), R/Z(w) = R/(2 pi i)^w Z\n";
  return os.str();
}

}  // namespace rdc::io
