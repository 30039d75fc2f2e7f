// Exercises the shared library through rdc.h only.
#include <doctest.h>

#include <string>
#include <thread>
#include <vector>

#include "rdc/rdc.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  rdc_string_free(s);
  return out;
}

std::string group_text(rdc_group* g) {
  char* s = nullptr;
  REQUIRE(rdc_group_render(g, RDC_FORMAT_TEXT, &s) == RDC_OK);
  rdc_group_free(g);
  return take(s);
}

std::string point(rdc_theory t, int64_t n, int64_t p) {
  rdc_group* g = nullptr;
  REQUIRE(rdc_point_group(t, n, p, &g) == RDC_OK);
  return group_text(g);
}

rdc_class* parse(const char* lit, rdc_theory t) {
  rdc_class* c = nullptr;
  REQUIRE(rdc_class_parse(lit, t, &c) == RDC_OK);
  return c;
}

}  // namespace

TEST_CASE("point groups and accessors") {
  CHECK(point(RDC_THEORY_DELIGNE, 1, 8) == "R/Z(8)");
  CHECK(point(RDC_THEORY_BREDON, 0, 0) == "Z");
  CHECK(point(RDC_THEORY_BREDON, 1, 3) == "Z/2");
  CHECK(point(RDC_THEORY_BOREL, 3, 5) == "Z/2");

  rdc_group *a = nullptr, *b = nullptr;
  REQUIRE(rdc_point_group(RDC_THEORY_DELIGNE, 1, 5, &a) == RDC_OK);
  REQUIRE(rdc_point_group(RDC_THEORY_DELIGNE, 1, 3, &b) == RDC_OK);
  CHECK(rdc_group_real_rank(a) == 1);
  CHECK(rdc_group_torsion_count(a) == 1);
  CHECK(rdc_group_free_rank(a) == 0);
  CHECK(rdc_group_circle_count(a) == 0);
  CHECK(rdc_group_equal(a, b) == 1);
  char* json = nullptr;
  REQUIRE(rdc_group_render(a, RDC_FORMAT_JSON, &json) == RDC_OK);
  CHECK(take(json) == R"({"circle_factors":[],"free_rank":0,"real_rank":1,"torsion":[2]})");
  rdc_group_free(a);
  rdc_group_free(b);
}

TEST_CASE("status codes and last error") {
  rdc_theory t;
  CHECK(rdc_theory_from_name("deligne", &t) == RDC_OK);
  CHECK(t == RDC_THEORY_DELIGNE);
  CHECK(rdc_theory_from_name("motivic", &t) == RDC_ERR_MALFORMED);
  CHECK(std::string(rdc_last_error()).find("motivic") != std::string::npos);

  rdc_class* c = nullptr;
  CHECK(rdc_class_parse("eps^", RDC_THEORY_BREDON, &c) == RDC_ERR_MALFORMED);
  CHECK(c == nullptr);
  CHECK(rdc_class_parse(nullptr, RDC_THEORY_BREDON, &c) == RDC_ERR_MALFORMED);
  CHECK(rdc_point_group(RDC_THEORY_BREDON, 0, 0, nullptr) == RDC_ERR_MALFORMED);

  // A success clears the previous message.
  rdc_group* g = nullptr;
  REQUIRE(rdc_point_group(RDC_THEORY_BREDON, 0, 0, &g) == RDC_OK);
  CHECK(std::string(rdc_last_error()).empty());
  rdc_group_free(g);

  rdc_field* f = nullptr;
  REQUIRE(rdc_field_from_json(R"({"poly":[-2,0,1]})", &f) == RDC_OK);
  char* out = nullptr;
  CHECK(rdc_field_report(f, 4, nullptr, RDC_FORMAT_TEXT, &out) == RDC_ERR_MALFORMED);
  rdc_field_free(f);

  // Null handles are accepted by the free functions.
  rdc_group_free(nullptr);
  rdc_class_free(nullptr);
  rdc_chow_free(nullptr);
  rdc_field_free(nullptr);
  rdc_string_free(nullptr);
}

TEST_CASE("products") {
  rdc_class* alpha = parse("alpha", RDC_THEORY_BREDON);
  rdc_class* tau = parse("tau", RDC_THEORY_BREDON);
  rdc_class* prod = nullptr;
  REQUIRE(rdc_class_mul(alpha, tau, &prod) == RDC_OK);
  char* s = nullptr;
  REQUIRE(rdc_class_render(prod, RDC_FORMAT_TEXT, &s) == RDC_OK);
  CHECK(take(s) == "2");
  int64_t n = 7, p = 7;
  REQUIRE(rdc_class_bidegree(prod, &n, &p) == RDC_OK);
  CHECK(n == 0);
  CHECK(p == 0);
  rdc_class_free(prod);

  rdc_class* d = parse("runit(p=1,v=-2)", RDC_THEORY_DELIGNE);
  CHECK(rdc_class_mul(alpha, d, &prod) == RDC_ERR_MALFORMED);  // mixed theories
  rdc_class* na = parse("alpha", RDC_THEORY_DELIGNE);
  rdc_class* r5 = parse("runit(p=5,v=3)", RDC_THEORY_DELIGNE);
  prod = nullptr;
  CHECK(rdc_class_mul(na, r5, &prod) == RDC_ERR_UNDETERMINED);
  CHECK(prod == nullptr);
  CHECK(std::string(rdc_last_error()) == "undetermined((0,-2) x (1,5))");
  REQUIRE(rdc_class_mul(d, d, &prod) == RDC_OK);
  REQUIRE(rdc_class_render(prod, RDC_FORMAT_JSON, &s) == RDC_OK);
  CHECK(take(s).find("\"kind\":\"torsion\"") != std::string::npos);
  for (auto* c : {alpha, tau, d, na, r5, prod}) rdc_class_free(c);
}

TEST_CASE("table json") {
  char* s = nullptr;
  REQUIRE(rdc_table(RDC_THEORY_DELIGNE, 1, 1, 8, 8, RDC_FORMAT_JSON, 0, &s) == RDC_OK);
  CHECK(take(s) ==
        R"({"cells":[{"group":{"circle_factors":[8],"free_rank":0,"real_rank":0,"torsion":[]},"n":1,"p":8}],)"
        R"("theory":"deligne","window":{"nmax":1,"nmin":1,"pmax":8,"pmin":8}})");
  CHECK(rdc_table(RDC_THEORY_DELIGNE, 5, 1, 0, 0, RDC_FORMAT_JSON, 0, &s) == RDC_ERR_MALFORMED);
}

TEST_CASE("cellular, bundles and curves") {
  rdc_chow* chow = nullptr;
  REQUIRE(rdc_chow_projective(4, &chow) == RDC_OK);
  for (int64_t j = 0; j <= 6; ++j) {
    rdc_group* g = nullptr;
    REQUIRE(rdc_cellular_deligne_diagonal(chow, j, &g) == RDC_OK);
    CHECK(group_text(g) == (j <= 4 ? "Z" : "0"));
  }
  rdc_chow_free(chow);

  const int64_t dims[] = {1, 2};
  REQUIRE(rdc_chow_multi_projective(dims, 2, &chow) == RDC_OK);
  rdc_group* g = nullptr;
  REQUIRE(rdc_cellular_group(chow, 4, 2, &g) == RDC_OK);
  const std::string cell = group_text(g);
  rdc_chow_free(chow);
  REQUIRE(rdc_pbundle_group(dims, 2, 4, 2, &g) == RDC_OK);
  CHECK(group_text(g) == cell);

  CHECK(rdc_chow_from_json(R"({"basis":[{"name":"h","codim":1}],"products":{"h,x":[]}})", &chow) ==
        RDC_ERR_MALFORMED);

  char* warning = nullptr;
  REQUIRE(rdc_curve_group(1, 2, RDC_CURVE_PIC, 0, &g, &warning) == RDC_OK);
  CHECK(warning == nullptr);
  CHECK(group_text(g) == "Z x R/Z x Z/2");
  REQUIRE(rdc_curve_group(0, 4, RDC_CURVE_PIC, 0, &g, &warning) == RDC_OK);
  CHECK(warning != nullptr);
  rdc_string_free(warning);
  rdc_group_free(g);
  CHECK(rdc_curve_group(0, 4, RDC_CURVE_PIC, 1, &g, &warning) == RDC_ERR_MALFORMED);
  CHECK(rdc_curve_group(-1, 0, RDC_CURVE_H21, 0, &g, nullptr) == RDC_ERR_MALFORMED);
}

TEST_CASE("number field report") {
  rdc_field* f = nullptr;
  REQUIRE(rdc_field_from_json(R"({"poly":[-2,0,1],"units":[[1,1]]})", &f) == RDC_OK);
  rdc_group* h = nullptr;
  REQUIRE(rdc_field_h11(f, &h) == RDC_OK);
  CHECK(group_text(h) == "R^2 x (Z/2)^2");
  char* s = nullptr;
  REQUIRE(rdc_field_report(f, 128, R"([[3,-2],[["1","1"],[-1,1]]])", RDC_FORMAT_JSON, &s) == RDC_OK);
  const std::string json = take(s);
  CHECK(json.find("\"regulator\":\"0.8813735870195430252") != std::string::npos);
  CHECK(json.find("\"by_convention\":false") != std::string::npos);
  CHECK(json.find("\"symbols\"") != std::string::npos);
  rdc_field_free(f);

  REQUIRE(rdc_field_from_json(R"({"signature":{"s":1,"t":2}})", &f) == RDC_OK);
  REQUIRE(rdc_field_h11(f, &h) == RDC_OK);
  CHECK(rdc_group_circle_count(h) == 2);
  rdc_group_free(h);
  rdc_field_free(f);
  CHECK(rdc_field_from_json(R"({"poly":[1,2,1]})", &f) == RDC_ERR_MALFORMED);
  CHECK(rdc_field_from_json("not json", &f) == RDC_ERR_MALFORMED);
}

TEST_CASE("snf and exactness") {
  char* s = nullptr;
  REQUIRE(rdc_snf("[[2,4,4],[-6,6,12],[10,-4,-16]]", RDC_FORMAT_JSON, &s) == RDC_OK);
  CHECK(take(s).find("\"invariant_factors\":[2,6,12]") != std::string::npos);
  int exact = -1;
  REQUIRE(rdc_exactcheck(R"([{"group":{},"map":{}},{"group":{"free_rank":1},"map":{"fg":[[2]]}},)"
                         R"({"group":{"free_rank":1},"map":{"fg":[[1]]}},{"group":{"torsion":[2]}},{"group":{}}])",
                         RDC_FORMAT_TEXT, &s, &exact) == RDC_OK);
  rdc_string_free(s);
  CHECK(exact == 1);
  CHECK(rdc_snf("[[1,2],[3]]", RDC_FORMAT_JSON, &s) == RDC_ERR_MALFORMED);
}

TEST_CASE("last error is per thread") {
  rdc_theory t;
  REQUIRE(rdc_theory_from_name("bogus", &t) == RDC_ERR_MALFORMED);
  std::string other;
  std::thread worker([&] {
    other = rdc_last_error();
    rdc_group* g = nullptr;
    if (rdc_point_group(RDC_THEORY_DELIGNE, 1, 8, &g) == RDC_OK) rdc_group_free(g);
  });
  worker.join();
  CHECK(other.empty());
  CHECK(std::string(rdc_last_error()).find("bogus") != std::string::npos);
}
