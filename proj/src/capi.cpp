#include "rdc/rdc.h"

#include <cstring>
#include <new>
#include <sstream>
#include <variant>

#include "rdc/bundle.hpp"
#include "rdc/cellular.hpp"
#include "rdc/curves.hpp"
#include "rdc/error.hpp"
#include "rdc/io.hpp"
#include "rdc/number_field.hpp"

struct rdc_group {
  rdc::GroupDescriptor g;
};

struct rdc_class {
  rdc::io::Theory theory;
  std::variant<rdc::BredonPointClass, rdc::DelignePointClass> value;
};

struct rdc_chow {
  rdc::ChowPresentation chow;
};

struct rdc_field {
  rdc::io::FieldInput input;
};

namespace {

using rdc::io::Json;

thread_local std::string g_last_error;

template <class F>
rdc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const rdc::Error& e) {
    g_last_error = e.what();
    return e.kind() == rdc::ErrorKind::kNonConvergence ? RDC_ERR_NONCONVERGENCE : RDC_ERR_MALFORMED;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("malformed JSON input: ") + e.what();
    return RDC_ERR_MALFORMED;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RDC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return RDC_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw rdc::malformed(std::string(what) + " must not be NULL");
}

rdc::io::Theory theory_of(rdc_theory t) {
  switch (t) {
    case RDC_THEORY_BREDON: return rdc::io::Theory::kBredon;
    case RDC_THEORY_DELIGNE: return rdc::io::Theory::kDeligne;
    case RDC_THEORY_BOREL: return rdc::io::Theory::kBorel;
  }
  throw rdc::malformed("unknown theory code");
}

rdc_status give_group(rdc::GroupDescriptor g, rdc_group** out) {
  need(out, "out");
  *out = new rdc_group{std::move(g)};
  return RDC_OK;
}

rdc_status give_string(const std::string& s, char** out) {
  need(out, "out");
  *out = dup(s);
  return RDC_OK;
}

std::string render_group(const rdc::GroupDescriptor& g, rdc_format f) {
  return f == RDC_FORMAT_JSON ? rdc::io::to_json(g).dump() : g.to_text();
}

std::vector<std::int64_t> dims_of(const int64_t* dims, size_t count) {
  if (count > 0) need(dims, "dims");
  return std::vector<std::int64_t>(dims, dims + count);
}

// --- number-field report ---------------------------------------------------

std::string poly_text(const std::vector<mpz_class>& c, const std::string& var) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    const mpz_class a = abs(c[i]);
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (out.empty()) out = (c[i] < 0 ? "-" : "") + term;
    else out += (c[i] < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string element_text(const rdc::RationalPoly& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const mpq_class a = abs(c[i]);
    const std::string mono = i == 0 ? "" : (i == 1 ? "theta" : "theta^" + std::to_string(i));
    std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (out.empty()) out = (c[i] < 0 ? "-" : "") + term;
    else out += (c[i] < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

Json q_pair(const mpq_class& q) { return Json::array({q.get_num().get_str(), q.get_den().get_str()}); }

std::vector<rdc::FieldElement> parse_elements(const rdc::NumberFieldSpec& spec, const Json& list) {
  std::vector<rdc::FieldElement> out;
  for (const auto& e : list) {
    std::vector<mpq_class> c;
    if (e.is_array())
      for (const auto& q : e) c.push_back(rdc::io::rational_from_json(q));
    else
      c.push_back(rdc::io::rational_from_json(e));
    out.emplace_back(spec, std::move(c));
  }
  return out;
}

std::string field_report(const rdc::io::FieldInput& in, unsigned precision, const char* symbols_json, rdc_format f) {
  using namespace rdc;
  const NumberFieldSpec& spec = in.spec;
  const int digits = decimal_digits(precision);
  auto dec = [&](const Real& x) { return to_decimal(x, digits); };
  const GroupDescriptor h11 = field_h11(spec);
  Json j{{"degree", spec.degree()}, {"s", spec.s()}, {"t", spec.t()}, {"unit_rank", spec.unit_rank()},
         {"h11", io::to_json(h11)}, {"h11_places", field_h11_text(spec)}};
  std::ostringstream os;
  if (spec.has_poly()) os << "field: Q[x]/(" << poly_text(spec.coefficients(), "x") << ")";
  else os << "field: signature only";
  os << "  degree " << spec.degree() << ", s = " << spec.s() << ", t = " << spec.t() << "\n";
  os << "H^{1,1} = " << field_h11_text(spec) << " = " << h11.to_text() << "  (C^x as R x R/Z)\n";

  if (!spec.has_poly()) {
    if (!in.units.empty() || symbols_json) throw malformed("units and symbols need a defining polynomial");
    return f == RDC_FORMAT_JSON ? j.dump() : os.str();
  }
  j["poly"] = Json::array();
  for (const auto& c : spec.coefficients()) j["poly"].push_back(c.get_str());
  const EmbeddingData emb = compute_embeddings(spec, precision);
  j["precision"] = precision;
  Json reals = Json::array(), complexes = Json::array();
  os << "embeddings (" << precision << " bits, max |f(root)| = " << to_decimal(emb.max_residual, 3) << "):\n";
  for (std::size_t i = 0; i < emb.real_roots.size(); ++i) {
    reals.push_back({{"value", dec(emb.real_roots[i])},
                     {"bracket", Json::array({q_pair(emb.real_certificates[i].lo), q_pair(emb.real_certificates[i].hi)})}});
    os << "  phi_" << i + 1 << " : theta -> " << dec(emb.real_roots[i]) << "\n";
  }
  for (std::size_t i = 0; i < emb.complex_reps.size(); ++i) {
    const auto& z = emb.complex_reps[i];
    complexes.push_back({{"re", dec(z.re)}, {"im", dec(z.im)}, {"radius", q_pair(emb.complex_certificates[i].radius)}});
    os << "  eta_" << i + 1 << " : theta -> " << dec(z.re) << " + " << dec(z.im) << "i\n";
  }
  j["real_places"] = reals;
  j["complex_places"] = complexes;

  std::vector<FieldElement> units;
  for (const auto& c : in.units) units.emplace_back(spec, c);
  Json ju = Json::array();
  for (std::size_t k = 0; k < units.size(); ++k) {
    const auto& u = units[k];
    Json entry{{"element", element_text(u.coefficients())}, {"norm", field_norm(u).get_str()}, {"is_unit", is_unit(u)}};
    os << "unit " << k + 1 << ": " << element_text(u.coefficients()) << "  norm " << field_norm(u).get_str();
    if (!u.is_zero()) {
      const auto v = regulator_map(u, emb);
      Json logs = Json::array();
      os << "  log|.| = (";
      for (std::size_t i = 0; i < v.size(); ++i) {
        logs.push_back(dec(v[i]));
        os << (i ? (static_cast<std::int64_t>(i) == emb.s() ? "; " : ", ") : "") << to_decimal(v[i], 12);
      }
      const Real tr = transfer(v, emb.s(), emb.t());
      entry["regulator_map"] = logs;
      entry["transfer"] = to_decimal(tr, 6);
      os << ")  transfer " << to_decimal(tr, 3);
    }
    os << "\n";
    ju.push_back(entry);
  }
  j["units"] = ju;
  if (!units.empty() || spec.unit_rank() == 0) {
    const Real reg = classical_regulator(units, emb);
    const LatticeVolume vol = lattice_volume(units, emb);
    j["regulator"] = dec(reg);
    j["volume"] = {{"formula", dec(vol.formula)}, {"gram", dec(vol.gram)}, {"by_convention", vol.by_convention}};
    os << "regulator R = " << dec(reg) << (vol.by_convention ? "  (r = 0 convention)" : "") << "\n";
    os << "Vol(L): formula " << dec(vol.formula) << ", Gram " << dec(vol.gram)
       << (vol.by_convention ? "  (empty lattice, both by convention)" : "") << "\n";
  } else {
    j["regulator"] = nullptr;
    os << "regulator: no units supplied (unit rank " << spec.unit_rank() << ")\n";
  }

  if (symbols_json) {
    const Json sj = io::parse_json(symbols_json);
    if (!sj.is_array()) throw malformed("symbols must be a list of symbols");
    Json js = Json::array();
    for (const auto& sym : sj) {
      if (!sym.is_array()) throw malformed("each symbol is a list of elements");
      const auto elems = parse_elements(spec, sym);
      const MilnorSymbol m = milnor_symbol(elems, emb);
      Json entry{{"p", m.p}};
      Json places = Json::array();
      std::string names;
      for (const auto& e : elems) names += (names.empty() ? "" : ", ") + element_text(e.coefficients());
      os << "{" << names << "} -> ";
      for (std::size_t i = 0; i < m.real_places.size(); ++i) {
        places.push_back(io::to_json(m.real_places[i]));
        os << (i ? ", " : "") << "phi_" << i + 1 << ": " << io::to_text(m.real_places[i]);
      }
      entry["real_places"] = places;
      if (m.p == 1) {
        Json cv = Json::array();
        for (std::size_t i = 0; i < m.complex_values.size(); ++i) {
          cv.push_back({{"re", dec(m.complex_values[i].re)}, {"im", dec(m.complex_values[i].im)}});
          os << (i || !m.real_places.empty() ? ", " : "") << "eta_" << i + 1 << ": "
             << to_decimal(m.complex_values[i].re, 12) << " + " << to_decimal(m.complex_values[i].im, 12) << "i";
        }
        entry["complex_values"] = cv;
      } else if (spec.t() > 0) {
        os << (m.real_places.empty() ? "" : ", ") << "complex places: 0";
      }
      os << "\n";
      js.push_back(entry);
    }
    j["symbols"] = js;
  }
  return f == RDC_FORMAT_JSON ? j.dump() : os.str();
}

}  // namespace

extern "C" {

const char* rdc_version(void) { return "1.0.0"; }

const char* rdc_last_error(void) { return g_last_error.c_str(); }

void rdc_string_free(char* s) { std::free(s); }

rdc_status rdc_theory_from_name(const char* name, rdc_theory* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    switch (rdc::io::parse_theory(name)) {
      case rdc::io::Theory::kBredon: *out = RDC_THEORY_BREDON; break;
      case rdc::io::Theory::kDeligne: *out = RDC_THEORY_DELIGNE; break;
      case rdc::io::Theory::kBorel: *out = RDC_THEORY_BOREL; break;
    }
    return RDC_OK;
  });
}

rdc_status rdc_point_group(rdc_theory theory, int64_t n, int64_t p, rdc_group** out) {
  return guarded([&] { return give_group(rdc::io::point_group(theory_of(theory), {n, p}), out); });
}

rdc_status rdc_group_render(const rdc_group* g, rdc_format format, char** out) {
  return guarded([&] {
    need(g, "group");
    return give_string(render_group(g->g, format), out);
  });
}

int64_t rdc_group_free_rank(const rdc_group* g) { return g ? g->g.free_rank() : 0; }
int64_t rdc_group_real_rank(const rdc_group* g) { return g ? g->g.real_rank() : 0; }
size_t rdc_group_torsion_count(const rdc_group* g) { return g ? g->g.torsion().size() : 0; }
size_t rdc_group_circle_count(const rdc_group* g) { return g ? g->g.circle_factors().size() : 0; }
int rdc_group_equal(const rdc_group* a, const rdc_group* b) { return a && b && a->g == b->g ? 1 : 0; }
void rdc_group_free(rdc_group* g) { delete g; }

rdc_status rdc_table(rdc_theory theory, int64_t nmin, int64_t nmax, int64_t pmin, int64_t pmax, rdc_format format,
                     int generators, char** out) {
  return guarded([&] {
    const rdc::io::Window w{nmin, nmax, pmin, pmax};
    const auto t = theory_of(theory);
    if (format == RDC_FORMAT_JSON) {
      if (generators) throw rdc::malformed("generators are listed in text form only");
      return give_string(rdc::io::table_json(t, w).dump(), out);
    }
    return give_string(rdc::io::table_text(t, w, generators != 0), out);
  });
}

rdc_status rdc_class_parse(const char* literal, rdc_theory theory, rdc_class** out) {
  return guarded([&] {
    need(literal, "literal");
    need(out, "out");
    const auto t = theory_of(theory);
    if (t == rdc::io::Theory::kBredon) *out = new rdc_class{t, rdc::io::parse_bredon(literal)};
    else if (t == rdc::io::Theory::kDeligne) *out = new rdc_class{t, rdc::io::parse_deligne(literal)};
    else throw rdc::malformed("classes are available for bredon and deligne only");
    return RDC_OK;
  });
}

rdc_status rdc_class_mul(const rdc_class* x, const rdc_class* y, rdc_class** out) {
  return guarded([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    if (x->theory != y->theory) throw rdc::malformed("factors belong to different theories");
    if (x->theory == rdc::io::Theory::kBredon) {
      *out = new rdc_class{x->theory, rdc::bredon_mul(std::get<rdc::BredonPointClass>(x->value),
                                                      std::get<rdc::BredonPointClass>(y->value))};
      return RDC_OK;
    }
    const rdc::DeligneProduct p =
        rdc::deligne_mul(std::get<rdc::DelignePointClass>(x->value), std::get<rdc::DelignePointClass>(y->value));
    if (std::holds_alternative<rdc::Undetermined>(p)) {
      g_last_error = rdc::io::to_text(p);
      return RDC_ERR_UNDETERMINED;
    }
    *out = new rdc_class{x->theory, std::get<rdc::DelignePointClass>(p)};
    return RDC_OK;
  });
}

rdc_status rdc_class_render(const rdc_class* c, rdc_format format, char** out) {
  return guarded([&] {
    need(c, "class");
    return std::visit(
        [&](const auto& v) {
          return give_string(format == RDC_FORMAT_JSON ? rdc::io::to_json(v).dump() : rdc::io::to_text(v), out);
        },
        c->value);
  });
}

rdc_status rdc_class_bidegree(const rdc_class* c, int64_t* n, int64_t* p) {
  return guarded([&] {
    need(c, "class");
    need(n, "n");
    need(p, "p");
    rdc::BiDegree d;
    if (const auto* b = std::get_if<rdc::BredonPointClass>(&c->value)) {
      const auto bd = b->bidegree();
      if (!bd) throw rdc::malformed("class is zero or not homogeneous");
      d = *bd;
    } else {
      d = std::get<rdc::DelignePointClass>(c->value).bidegree();
    }
    *n = d.n;
    *p = d.p;
    return RDC_OK;
  });
}

void rdc_class_free(rdc_class* c) { delete c; }

rdc_status rdc_chow_from_json(const char* json, rdc_chow** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new rdc_chow{rdc::io::chow_from_json(rdc::io::parse_json(json))};
    return RDC_OK;
  });
}

rdc_status rdc_chow_projective(int64_t dim, rdc_chow** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rdc_chow{rdc::ChowPresentation::projective_space(dim)};
    return RDC_OK;
  });
}

rdc_status rdc_chow_multi_projective(const int64_t* dims, size_t count, rdc_chow** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rdc_chow{rdc::ChowPresentation::multi_projective(dims_of(dims, count))};
    return RDC_OK;
  });
}

rdc_status rdc_cellular_group(const rdc_chow* chow, int64_t n, int64_t p, rdc_group** out) {
  return guarded([&] {
    need(chow, "chow");
    return give_group(rdc::cellular_bredon_group(chow->chow, {n, p}), out);
  });
}

rdc_status rdc_cellular_deligne_diagonal(const rdc_chow* chow, int64_t p, rdc_group** out) {
  return guarded([&] {
    need(chow, "chow");
    return give_group(rdc::cellular_deligne_diagonal(chow->chow, p), out);
  });
}

void rdc_chow_free(rdc_chow* chow) { delete chow; }

rdc_status rdc_pbundle_group(const int64_t* dims, size_t count, int64_t n, int64_t p, rdc_group** out) {
  return guarded([&] {
    return give_group(rdc::bundle_group(rdc::BundleRing::projective(dims_of(dims, count)), {n, p}), out);
  });
}

rdc_status rdc_pbundle_ppp(const char* a_literal, int64_t k, int64_t dim, rdc_format format, char** out) {
  return guarded([&] {
    need(a_literal, "literal");
    const auto ring = rdc::BundleRing::projective({dim});
    const rdc::PppResult r = rdc::ppp_cup(rdc::io::parse_bredon(a_literal), k, ring);
    if (format == RDC_FORMAT_JSON)
      return give_string(Json{{"value", rdc::io::to_json(r.value)}, {"branch", rdc::branch_name(r.branch)}}.dump(), out);
    return give_string(rdc::io::to_text(r.value, ring) + "  [branch " + rdc::branch_name(r.branch) + "]", out);
  });
}

rdc_status rdc_curve_group(int64_t genus, int64_t components, rdc_curve_invariant what, int strict, rdc_group** out,
                           char** warning) {
  return guarded([&] {
    const rdc::RealCurve x{genus, components};
    const std::string w = x.validate(strict != 0);
    rdc::GroupDescriptor g;
    switch (what) {
      case RDC_CURVE_H21: g = rdc::curve_h21(x); break;
      case RDC_CURVE_PIC: g = rdc::curve_picard(x); break;
      case RDC_CURVE_BRAUER: g = rdc::curve_brauer_signature(x); break;
      default: throw rdc::malformed("unknown curve invariant");
    }
    need(out, "out");
    if (warning) *warning = w.empty() ? nullptr : dup(w);
    *out = new rdc_group{std::move(g)};
    return RDC_OK;
  });
}

rdc_status rdc_field_from_json(const char* json, rdc_field** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new rdc_field{rdc::io::field_from_json(rdc::io::parse_json(json))};
    return RDC_OK;
  });
}

rdc_status rdc_field_h11(const rdc_field* f, rdc_group** out) {
  return guarded([&] {
    need(f, "field");
    return give_group(rdc::field_h11(f->input.spec), out);
  });
}

rdc_status rdc_field_report(const rdc_field* f, unsigned precision, const char* symbols_json, rdc_format format,
                            char** out) {
  return guarded([&] {
    need(f, "field");
    return give_string(field_report(f->input, precision, symbols_json, format), out);
  });
}

void rdc_field_free(rdc_field* f) { delete f; }

rdc_status rdc_snf(const char* matrix_json, rdc_format format, char** out) {
  return guarded([&] {
    need(matrix_json, "matrix");
    const auto snf = rdc::smith_normal_form(rdc::io::matrix_from_json(rdc::io::parse_json(matrix_json)));
    return give_string(format == RDC_FORMAT_JSON ? rdc::io::smith_to_json(snf).dump() : rdc::io::smith_to_text(snf),
                       out);
  });
}

rdc_status rdc_exactcheck(const char* sequence_json, rdc_format format, char** out, int* exact) {
  return guarded([&] {
    need(sequence_json, "sequence");
    const auto report = rdc::verify_exact(rdc::io::sequence_from_json(rdc::io::parse_json(sequence_json)));
    need(out, "out");
    *out = dup(format == RDC_FORMAT_JSON ? rdc::io::to_json(report).dump() : rdc::io::report_to_text(report));
    if (exact) *exact = report.exact() ? 1 : 0;
    return RDC_OK;
  });
}

}  // extern "C"
