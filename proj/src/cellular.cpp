#include "rdc/cellular.hpp"

#include <algorithm>
#include <set>

#include "rdc/error.hpp"

namespace rdc {

namespace {

void add_term(ChowCombination& c, std::size_t index, const mpz_class& coeff) {
  if (coeff == 0) return;
  auto it = std::lower_bound(c.begin(), c.end(), index, [](const auto& t, std::size_t i) { return t.first < i; });
  if (it != c.end() && it->first == index) {
    it->second += coeff;
    if (it->second == 0) c.erase(it);
  } else {
    c.insert(it, {index, coeff});
  }
}

ChowCombination normalized(const ChowCombination& c) {
  ChowCombination out;
  for (const auto& [i, k] : c) add_term(out, i, k);
  return out;
}

}  // namespace

ChowPresentation ChowPresentation::create(std::vector<ChowBasisElement> basis, const ProductTable& products,
                                          const std::string& unit_name) {
  ChowPresentation c;
  const std::size_t n = basis.size();
  if (n == 0) throw malformed("a Chow presentation needs at least one basis element");
  std::set<std::string> names;
  for (const auto& e : basis) {
    if (e.name.empty()) throw malformed("basis elements need names");
    if (e.codim < 0) throw malformed("basis element '" + e.name + "' has negative codimension");
    if (!names.insert(e.name).second) throw malformed("duplicate basis name '" + e.name + "'");
  }
  c.basis_ = std::move(basis);

  if (!unit_name.empty()) {
    c.unit_ = c.index_of(unit_name);
  } else if (names.count("1")) {
    c.unit_ = c.index_of("1");
  } else {
    std::vector<std::size_t> zero;
    for (std::size_t i = 0; i < n; ++i)
      if (c.basis_[i].codim == 0) zero.push_back(i);
    if (zero.size() != 1) throw malformed("cannot identify the unit; name it explicitly");
    c.unit_ = zero.front();
  }
  if (c.basis_[c.unit_].codim != 0) throw malformed("the unit must have codimension 0");

  c.table_.assign(n * n, {});
  std::vector<bool> given(n * n, false);
  for (const auto& [key, comb] : products) {
    const auto [i, j] = key;
    if (i >= n || j >= n) throw malformed("product refers to a basis index out of range");
    for (const auto& [k, coeff] : comb)
      if (k >= n) throw malformed("product result refers to a basis index out of range");
    c.table_[i * n + j] = normalized(comb);
    given[i * n + j] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (given[i * n + j]) {
        if (given[j * n + i] && c.table_[i * n + j] != c.table_[j * n + i])
          throw malformed("products " + c.basis_[i].name + "," + c.basis_[j].name + " and its transpose disagree");
      } else if (given[j * n + i]) {
        c.table_[i * n + j] = c.table_[j * n + i];
      }
    }
  for (std::size_t i = 0; i < n; ++i) {
    const ChowCombination id{{i, 1}};
    for (auto [p, q] : {std::pair{c.unit_, i}, std::pair{i, c.unit_}}) {
      if (given[p * n + q] && c.table_[p * n + q] != id)
        throw malformed("the unit does not act as the identity on '" + c.basis_[i].name + "'");
      c.table_[p * n + q] = id;
    }
  }
  c.validate();
  return c;
}

void ChowPresentation::validate() {
  const std::size_t n = basis_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, coeff] : mul(i, j))
        if (basis_[k].codim != checked_add(basis_[i].codim, basis_[j].codim))
          throw malformed("product " + basis_[i].name + "*" + basis_[j].name + " leaves codimension " +
                          std::to_string(basis_[i].codim + basis_[j].codim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        ChowCombination left, right;
        for (const auto& [a, ca] : mul(i, j))
          for (const auto& [b, cb] : mul(a, k)) add_term(left, b, ca * cb);
        for (const auto& [a, ca] : mul(j, k))
          for (const auto& [b, cb] : mul(i, a)) add_term(right, b, ca * cb);
        if (left != right)
          throw malformed("structure constants are not associative on (" + basis_[i].name + "," + basis_[j].name +
                          "," + basis_[k].name + ")");
      }
}

std::size_t ChowPresentation::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return i;
  throw malformed("unknown basis element '" + name + "'");
}

std::int64_t ChowPresentation::rank_in_codim(std::int64_t codim) const {
  return std::count_if(basis_.begin(), basis_.end(), [&](const auto& e) { return e.codim == codim; });
}

ChowPresentation ChowPresentation::projective_space(std::int64_t p, const std::string& var) {
  if (p < 0) throw malformed("projective space dimension must be nonnegative");
  if (p > 64) throw malformed("projective space dimension is limited to 64");
  std::vector<ChowBasisElement> basis;
  for (std::int64_t j = 0; j <= p; ++j)
    basis.push_back({j == 0 ? "1" : j == 1 ? var : var + "^" + std::to_string(j), j});
  ProductTable t;
  for (std::int64_t i = 0; i <= p; ++i)
    for (std::int64_t j = 0; i + j <= p; ++j)
      t[{static_cast<std::size_t>(i), static_cast<std::size_t>(j)}] = {{static_cast<std::size_t>(i + j), 1}};
  return create(std::move(basis), t, "1");
}

ChowPresentation ChowPresentation::product(const ChowPresentation& x, const ChowPresentation& y) {
  const std::size_t nx = x.size(), ny = y.size();
  auto idx = [ny](std::size_t i, std::size_t j) { return i * ny + j; };
  std::vector<ChowBasisElement> basis;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const std::string& a = x.basis_[i].name;
      const std::string& b = y.basis_[j].name;
      std::string name = i == x.unit_ ? (j == y.unit_ ? std::string("1") : b) : (j == y.unit_ ? a : a + "*" + b);
      basis.push_back({name, checked_add(x.basis_[i].codim, y.basis_[j].codim)});
    }
  ProductTable t;
  for (std::size_t i1 = 0; i1 < nx; ++i1)
    for (std::size_t j1 = 0; j1 < ny; ++j1)
      for (std::size_t i2 = 0; i2 < nx; ++i2)
        for (std::size_t j2 = 0; j2 < ny; ++j2) {
          ChowCombination c;
          for (const auto& [a, ca] : x.mul(i1, i2))
            for (const auto& [b, cb] : y.mul(j1, j2)) add_term(c, idx(a, b), ca * cb);
          t[{idx(i1, j1), idx(i2, j2)}] = std::move(c);
        }
  const std::string unit = basis[idx(x.unit_, y.unit_)].name;
  return create(std::move(basis), t, unit);
}

ChowPresentation ChowPresentation::multi_projective(const std::vector<std::int64_t>& dims) {
  if (dims.empty()) return projective_space(0);
  static const char* const vars[] = {"x", "y", "z", "w"};
  auto var = [](std::size_t i) { return i < 4 ? std::string(vars[i]) : "t" + std::to_string(i - 3); };
  if (dims.size() == 1) return projective_space(dims[0]);
  ChowPresentation acc = projective_space(dims[0], var(0));
  for (std::size_t i = 1; i < dims.size(); ++i) acc = product(acc, projective_space(dims[i], var(i)));
  return acc;
}

GroupDescriptor cellular_bredon_group(const ChowPresentation& chow, BiDegree d) {
  GroupDescriptor out;
  for (const auto& e : chow.basis())
    out += bredon_point_group({checked_sub(d.n, checked_mul(2, e.codim)), checked_sub(d.p, e.codim)});
  return out;
}

CellularClass cellular_bredon_mul(const ChowPresentation& chow, const CellularClass& x, const CellularClass& y) {
  CellularClass out;
  for (const auto& [i, cx] : x) {
    if (i >= chow.size()) throw malformed("cellular class refers to a basis index out of range");
    for (const auto& [j, cy] : y) {
      if (j >= chow.size()) throw malformed("cellular class refers to a basis index out of range");
      const ChowCombination& c = chow.mul(i, j);
      if (c.empty()) continue;
      const BredonPointClass point = bredon_mul(cx, cy);
      if (point.is_zero()) continue;
      for (const auto& [k, coeff] : c) out[k] += point.scaled(coeff);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

GroupDescriptor cellular_deligne_diagonal(const ChowPresentation& chow, std::int64_t p) {
  if (p < 0) throw malformed("the diagonal D^{2p,p} needs p >= 0");
  return GroupDescriptor::integers(chow.rank_in_codim(p));
}

}  // namespace rdc
