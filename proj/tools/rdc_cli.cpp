// Command-line front end. Talks to the library only through rdc.h.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdc/rdc.h"

namespace {

struct Failure {
  int code;
};

// Returns normally on success; prints the library message and throws otherwise.
void check(rdc_status s, const char* context) {
  if (s == RDC_OK) return;
  std::cerr << "rdc " << context << ": " << rdc_last_error() << "\n";
  // Internal errors have no dedicated exit code and are reported as malformed input.
  throw Failure{s == RDC_ERR_INTERNAL ? 1 : s};
}

void print_and_free(char* s) {
  std::cout << s;
  if (*s && s[std::char_traits<char>::length(s) - 1] != '\n') std::cout << "\n";
  rdc_string_free(s);
}

void print_group(rdc_group* g, rdc_format f) {
  char* out = nullptr;
  rdc_status s = rdc_group_render(g, f, &out);
  rdc_group_free(g);
  check(s, "render");
  print_and_free(out);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "rdc: cannot read '" << path << "'\n";
    throw Failure{1};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

// "1,-2/3,0" -> ["1","-2/3","0"]; validation happens in the library.
std::string coeff_list_json(const std::string& text) {
  std::string out = "[";
  for (const auto& part : split(text, ',')) {
    const std::string t = trim(part);
    if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos) {
      std::cerr << "rdc: invalid coefficient '" << part << "'\n";
      throw Failure{1};
    }
    out += (out.size() > 1 ? ",\"" : "\"") + t + "\"";
  }
  return out + "]";
}

rdc_theory theory_from(const std::string& name) {
  rdc_theory t;
  check(rdc_theory_from_name(name.c_str(), &t), "theory");
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bigraded Bredon and Deligne cohomology of real varieties"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rdc_version()));
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string theory = "bredon";
  std::int64_t n = 0, p = 0;

  auto* point = app.add_subcommand("point", "Cohomology group of a point in bidegree (n, p)");
  point->add_option("--n", n)->required();
  point->add_option("--p", p)->required();
  point->add_option("--theory", theory)->check(CLI::IsMember({"bredon", "deligne", "borel"}));

  std::int64_t nmin = -5, nmax = 5, pmin = -8, pmax = 8;
  bool generators = false;
  auto* table = app.add_subcommand("table", "Grid of point groups");
  table->add_option("--nmin", nmin);
  table->add_option("--nmax", nmax);
  table->add_option("--pmin", pmin);
  table->add_option("--pmax", pmax);
  table->add_option("--theory", theory)->check(CLI::IsMember({"bredon", "deligne", "borel"}));
  table->add_flag("--generators", generators, "List generators next to the groups");

  std::vector<std::string> factors;
  auto* mul = app.add_subcommand("mul", "Product of two class literals");
  mul->add_option("classes", factors, "Two class literals")->required()->expected(2);
  mul->add_option("--theory", theory)->check(CLI::IsMember({"bredon", "deligne"}));

  std::string chow_file;
  std::int64_t proj_dim = -1;
  bool diagonal = false;
  auto* cellular = app.add_subcommand("cellular", "Bredon cohomology of a cellular variety");
  auto* chow_opt = cellular->add_option("--chow", chow_file, "Chow ring JSON file");
  cellular->add_option("--projective", proj_dim, "Use projective space of this dimension")->excludes(chow_opt);
  cellular->add_option("--n", n);
  cellular->add_option("--p", p)->required();
  cellular->add_flag("--diagonal", diagonal, "Deligne group D^{2p,p} instead of H^{n,p}");

  std::string factor_list, ppp_class;
  std::int64_t ppp_k = -1;
  auto* pbundle = app.add_subcommand("pbundle", "Products of projective spaces");
  pbundle->add_option("--factors", factor_list, "Dimensions, comma separated")->required();
  pbundle->add_option("--n", n);
  pbundle->add_option("--p", p);
  pbundle->add_option("--ppp", ppp_class, "Weight -r class a: report a x T^k (single factor)");
  pbundle->add_option("--k", ppp_k);

  std::int64_t genus = 0, components = 0;
  std::string what = "pic";
  bool strict = false;
  auto* curve = app.add_subcommand("curve", "Invariants of a smooth projective real curve");
  curve->add_option("--genus", genus)->required();
  curve->add_option("--components", components)->required();
  curve->add_option("--what", what)->check(CLI::IsMember({"h21", "pic", "brauer"}));
  curve->add_flag("--strict", strict, "Reject data outside Harnack's bound");

  std::string spec_file, poly;
  std::vector<std::string> units, symbols;
  unsigned precision = 128;
  auto* field = app.add_subcommand("field", "Embeddings, regulator and symbols of a number field");
  auto* spec_opt = field->add_option("--spec", spec_file, "Field spec JSON file");
  field->add_option("--poly", poly, "Ascending integer coefficients, comma separated")->excludes(spec_opt);
  field->add_option("--unit", units, "Unit coefficients in the power basis, comma separated (repeatable)");
  field->add_option("--symbol", symbols, "Symbol entries separated by ';' or spaces, e.g. \"3;-2\" (repeatable)");
  field->add_option("--precision", precision, "Working precision in bits");

  std::string matrix_file;
  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("--matrix", matrix_file)->required();

  std::string seq_file;
  auto* exact = app.add_subcommand("exactcheck", "Exactness of a sequence of abelian groups");
  exact->add_option("--seq", seq_file)->required();

  for (auto* sub : app.get_subcommands({})) sub->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const rdc_format fmt = format == "json" ? RDC_FORMAT_JSON : RDC_FORMAT_TEXT;
  try {
    if (point->parsed()) {
      rdc_group* g = nullptr;
      check(rdc_point_group(theory_from(theory), n, p, &g), "point");
      print_group(g, fmt);
    } else if (table->parsed()) {
      char* out = nullptr;
      check(rdc_table(theory_from(theory), nmin, nmax, pmin, pmax, fmt, generators, &out), "table");
      print_and_free(out);
    } else if (mul->parsed()) {
      const rdc_theory t = mul->count("--theory") ? theory_from(theory) : RDC_THEORY_DELIGNE;
      rdc_class *x = nullptr, *y = nullptr, *z = nullptr;
      check(rdc_class_parse(factors[0].c_str(), t, &x), "first factor");
      rdc_status s = rdc_class_parse(factors[1].c_str(), t, &y);
      if (s != RDC_OK) rdc_class_free(x);
      check(s, "second factor");
      s = rdc_class_mul(x, y, &z);
      rdc_class_free(x);
      rdc_class_free(y);
      if (s == RDC_ERR_UNDETERMINED) {
        const std::string locus = rdc_last_error();
        if (fmt == RDC_FORMAT_JSON) std::cout << "{\"kind\":\"undetermined\",\"locus\":\"" << locus << "\"}\n";
        else std::cout << locus << "\n";
        return 2;
      }
      check(s, "mul");
      char* out = nullptr;
      s = rdc_class_render(z, fmt, &out);
      rdc_class_free(z);
      check(s, "render");
      print_and_free(out);
    } else if (cellular->parsed()) {
      rdc_chow* chow = nullptr;
      if (!chow_file.empty()) check(rdc_chow_from_json(slurp(chow_file).c_str(), &chow), "chow");
      else if (proj_dim >= 0) check(rdc_chow_projective(proj_dim, &chow), "chow");
      else {
        std::cerr << "rdc cellular: give --chow FILE or --projective DIM\n";
        return 1;
      }
      rdc_group* g = nullptr;
      rdc_status s = diagonal ? rdc_cellular_deligne_diagonal(chow, p, &g) : rdc_cellular_group(chow, n, p, &g);
      rdc_chow_free(chow);
      check(s, "cellular");
      print_group(g, fmt);
    } else if (pbundle->parsed()) {
      std::vector<std::int64_t> dims;
      for (const auto& part : split(factor_list, ',')) {
        try {
          std::size_t used = 0;
          dims.push_back(std::stoll(trim(part), &used));
          if (used != trim(part).size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
          std::cerr << "rdc pbundle: invalid factor dimension '" << part << "'\n";
          return 1;
        }
      }
      if (!ppp_class.empty()) {
        if (dims.size() != 1 || ppp_k < 0) {
          std::cerr << "rdc pbundle: --ppp needs one factor and --k >= 0\n";
          return 1;
        }
        char* out = nullptr;
        check(rdc_pbundle_ppp(ppp_class.c_str(), ppp_k, dims[0], fmt, &out), "ppp");
        print_and_free(out);
      } else {
        rdc_group* g = nullptr;
        check(rdc_pbundle_group(dims.data(), dims.size(), n, p, &g), "pbundle");
        print_group(g, fmt);
      }
    } else if (curve->parsed()) {
      const rdc_curve_invariant inv = what == "h21" ? RDC_CURVE_H21 : what == "pic" ? RDC_CURVE_PIC : RDC_CURVE_BRAUER;
      rdc_group* g = nullptr;
      char* warning = nullptr;
      check(rdc_curve_group(genus, components, inv, strict, &g, &warning), "curve");
      if (warning) {
        std::cerr << "rdc curve: warning: " << warning << "\n";
        rdc_string_free(warning);
      }
      print_group(g, fmt);
    } else if (field->parsed()) {
      std::string spec;
      if (!spec_file.empty()) {
        spec = slurp(spec_file);
        if (!units.empty()) {
          std::cerr << "rdc field: give units in the spec file or with --poly, not both\n";
          return 1;
        }
      } else if (!poly.empty()) {
        spec = "{\"poly\":" + coeff_list_json(poly) + ",\"units\":[";
        for (std::size_t i = 0; i < units.size(); ++i) spec += (i ? "," : "") + coeff_list_json(units[i]);
        spec += "]}";
      } else {
        std::cerr << "rdc field: give --spec FILE or --poly COEFFS\n";
        return 1;
      }
      std::string sym_json;
      if (!symbols.empty()) {
        sym_json = "[";
        for (std::size_t i = 0; i < symbols.size(); ++i) {
          sym_json += i ? ",[" : "[";
          std::vector<std::string> entries;
          for (const auto& chunk : split(symbols[i], ';'))
            for (const auto& word : split(chunk, ' '))
              if (!trim(word).empty()) entries.push_back(word);
          for (std::size_t k = 0; k < entries.size(); ++k) sym_json += (k ? "," : "") + coeff_list_json(entries[k]);
          sym_json += "]";
        }
        sym_json += "]";
      }
      rdc_field* f = nullptr;
      check(rdc_field_from_json(spec.c_str(), &f), "field");
      char* out = nullptr;
      rdc_status s = rdc_field_report(f, precision, sym_json.empty() ? nullptr : sym_json.c_str(), fmt, &out);
      rdc_field_free(f);
      check(s, "field");
      print_and_free(out);
    } else if (snf->parsed()) {
      char* out = nullptr;
      check(rdc_snf(slurp(matrix_file).c_str(), fmt, &out), "snf");
      print_and_free(out);
    } else if (exact->parsed()) {
      char* out = nullptr;
      int is_exact = 0;
      check(rdc_exactcheck(slurp(seq_file).c_str(), fmt, &out, &is_exact), "exactcheck");
      print_and_free(out);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
