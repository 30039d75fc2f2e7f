#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "rdc/bredon.hpp"
#include "rdc/bundle.hpp"
#include "rdc/cellular.hpp"
#include "rdc/deligne.hpp"
#include "rdc/exactseq.hpp"
#include "rdc/group.hpp"
#include "rdc/matrix.hpp"
#include "rdc/number_field.hpp"

namespace rdc::io {

using Json = nlohmann::json;

enum class Theory { kBredon, kDeligne, kBorel };
Theory parse_theory(const std::string& name);
std::string theory_name(Theory t);
GroupDescriptor point_group(Theory t, BiDegree d);

/// Parses JSON text; syntax errors become malformed-input errors.
Json parse_json(const std::string& text);

Json to_json(const GroupDescriptor& g);
GroupDescriptor group_from_json(const Json& j);

Json to_json(const BredonPointClass& c);
BredonPointClass bredon_from_json(const Json& j);

Json to_json(const DelignePointClass& c);
Json to_json(const DeligneProduct& p);
DelignePointClass deligne_from_json(const Json& j);

Json to_json(const BundleClass& c);

Json to_json(const IntegerMatrix& m);
/// [[...], ...] or {"rows": r, "cols": c, "entries": [[...]]}.
IntegerMatrix matrix_from_json(const Json& j);
Json smith_to_json(const SmithForm& f);
std::string smith_to_text(const SmithForm& f);

ChowPresentation chow_from_json(const Json& j);
Json to_json(const ChowPresentation& c);

/// An array of nodes, or {"nodes": [...]}; each node is
/// {"group": <group>|"unknown", "map": {"fg": [[...]], "cont": [[...]], "real_rank": r}|"unknown"}.
/// Empty or missing blocks default to zero maps of the shape the groups fix.
std::vector<SequenceNode> sequence_from_json(const Json& j);
Json to_json(const ExactnessReport& r);
std::string report_to_text(const ExactnessReport& r);

struct FieldInput {
  NumberFieldSpec spec;
  std::vector<std::vector<mpq_class>> units;
};
/// {"poly": [...], "units": [[[num, den] | int | "a/b", ...], ...]} or {"signature": {"s": s, "t": t}}.
FieldInput field_from_json(const Json& j);

mpq_class parse_rational(const std::string& text);
/// {"num","den"}, [num, den], an integer, or an "a/b" string.
mpq_class rational_from_json(const Json& j);

/// Literals: sums of terms such as "3*eps^2*tau", "alpha*tauinv^2",
/// "theta*epsinv^3*tauinv", or integers.
BredonPointClass parse_bredon(const std::string& text);
/// Adds "runit(p=3,v=-2/5)", "circle(p=4,q=1/3)", "torsion(n=2,p=4)",
/// "zero(n=1,p=3)"; any other literal is a Bredon class lifted along rho.
DelignePointClass parse_deligne(const std::string& text);

std::string to_text(const BredonPointClass& c);
std::string to_text(const DelignePointClass& c);
std::string to_text(const DeligneProduct& p);
std::string to_text(const BundleClass& c, const BundleRing& ring);

struct Window {
  std::int64_t nmin, nmax, pmin, pmax;
};

/// {"cells":[{"group":..,"n":..,"p":..}], "theory":.., "window":{..}}, rows by
/// p descending then n ascending.
Json table_json(Theory t, const Window& w);
/// Aligned grid mirroring the printed table, then a legend.
std::string table_text(Theory t, const Window& w, bool generators);

/// Short cell label: Z, Z^x (= Z/2), R^x, R/Z(w), 0, otherwise the descriptor text.
std::string cell_label(const GroupDescriptor& g);
/// Generator of the point group at d ("tau^3 eps^2", "2tau^-1", "eps^-1 theta").
std::string generator_label(Theory t, BiDegree d);

}  // namespace rdc::io
