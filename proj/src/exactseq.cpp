#include "rdc/exactseq.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "rdc/deligne.hpp"
#include "rdc/error.hpp"

namespace rdc {

namespace {

using Vec = std::vector<mpq_class>;

// Coordinate layout of a descriptor group.
struct Layout {
  std::size_t free = 0;
  std::vector<mpz_class> orders;  // one per torsion coordinate
  std::size_t reals = 0;
  std::size_t circles = 0;

  explicit Layout(const GroupDescriptor& g)
      : free(static_cast<std::size_t>(g.free_rank())),
        orders(g.torsion()),
        reals(static_cast<std::size_t>(g.real_rank())),
        circles(g.circle_factors().size()) {}
  Layout() = default;

  std::size_t k() const { return free + orders.size(); }
  std::size_t m() const { return reals + circles; }

  // Generators of the relation lattice as vectors of length k + m.
  std::vector<Vec> relations() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      Vec v(k() + m());
      v[free + i] = orders[i];
      out.push_back(std::move(v));
    }
    for (std::size_t j = 0; j < circles; ++j) {
      Vec v(k() + m());
      v[k() + reals + j] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }

  bool in_relations(const Vec& x) const {
    for (std::size_t i = 0; i < free; ++i)
      if (x[i] != 0) return false;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const mpq_class& v = x[free + i];
      if (v.get_den() != 1 || !mpz_divisible_p(v.get_num_mpz_t(), orders[i].get_mpz_t())) return false;
    }
    for (std::size_t j = 0; j < reals; ++j)
      if (x[k() + j] != 0) return false;
    for (std::size_t j = 0; j < circles; ++j)
      if (x[k() + reals + j].get_den() != 1) return false;
    return true;
  }
};

// A full-form map as one rational block matrix (k_t + m_t) x (k_s + m_s).
RationalMatrix full_matrix(const Homomorphism& h, const Layout& s, const Layout& t) {
  RationalMatrix out(t.k() + t.m(), s.k() + s.m());
  for (std::size_t i = 0; i < t.k(); ++i)
    for (std::size_t j = 0; j < s.k(); ++j) out(i, j) = h.fg(i, j);
  if (h.cont)
    for (std::size_t i = 0; i < t.m(); ++i)
      for (std::size_t j = 0; j < s.k() + s.m(); ++j) out(t.k() + i, j) = (*h.cont)(i, j);
  return out;
}

Vec apply(const RationalMatrix& m, const Vec& x) {
  Vec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (x[j] != 0) y[i] += m(i, j) * x[j];
  return y;
}

mpz_class common_denominator(const std::vector<Vec>& vs) {
  mpz_class d = 1;
  for (const auto& v : vs)
    for (const auto& e : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den_mpz_t());
  return d;
}

IntegerMatrix scaled_columns(const std::vector<Vec>& cols, std::size_t len, const mpz_class& d) {
  IntegerMatrix m(len, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < len; ++i) {
      mpq_class v = cols[j][i] * d;
      m(i, j) = v.get_num();
    }
  return m;
}

RationalMatrix columns_matrix(const std::vector<Vec>& cols, std::size_t len) {
  RationalMatrix m(len, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < len; ++i) m(i, j) = cols[j][i];
  return m;
}

std::vector<Vec> matrix_columns(const RationalMatrix& m) {
  std::vector<Vec> out(m.cols(), Vec(m.rows()));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[j][i] = m(i, j);
  return out;
}

// Closed subgroup L + W of Z^k x R^m: L generated by `lattice`, W spanned by
// `span` (vectors of length m living in the real coordinates).
struct Subgroup {
  std::size_t k = 0, m = 0;
  std::vector<Vec> lattice;
  std::vector<Vec> span;
};

// (z, v) -> (z, Q v) with Q spanning the annihilator of W, identifying
// (Z^k x R^m) / W with a subgroup of Z^k x Q^{m'}.
struct SpanQuotient {
  std::size_t k;
  RationalMatrix q;

  SpanQuotient(std::size_t k_, std::size_t m, const std::vector<Vec>& span)
      : k(k_), q(columns_matrix(span, m).left_null_space()) {}

  Vec operator()(const Vec& x) const {
    Vec out(k + q.rows());
    std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), out.begin());
    for (std::size_t i = 0; i < q.rows(); ++i)
      for (std::size_t j = 0; j < q.cols(); ++j)
        if (x[k + j] != 0) out[k + i] += q(i, j) * x[k + j];
    return out;
  }
  std::size_t dim() const { return k + q.rows(); }
};

bool span_contains(const std::vector<Vec>& big, const std::vector<Vec>& small, std::size_t m) {
  if (small.empty()) return true;
  const std::size_t r = columns_matrix(big, m).rank();
  std::vector<Vec> both = big;
  both.insert(both.end(), small.begin(), small.end());
  return columns_matrix(both, m).rank() == r;
}

bool contains(const Subgroup& s, const Subgroup& sub) {
  if (!span_contains(s.span, sub.span, s.m)) return false;
  const SpanQuotient pi(s.k, s.m, s.span);
  std::vector<Vec> gens;
  for (const auto& l : s.lattice) gens.push_back(pi(l));
  std::vector<Vec> targets;
  for (const auto& l : sub.lattice) targets.push_back(pi(l));
  std::vector<Vec> all = gens;
  all.insert(all.end(), targets.begin(), targets.end());
  const mpz_class d = common_denominator(all);
  const IntegerMatrix a = scaled_columns(gens, pi.dim(), d);
  for (const auto& t : targets) {
    std::vector<mpz_class> b(pi.dim());
    for (std::size_t i = 0; i < pi.dim(); ++i) b[i] = mpq_class(t[i] * d).get_num();
    if (!solve_integer(a, b)) return false;
  }
  return true;
}

// K / I for I inside K.
GroupDescriptor quotient(const Subgroup& kernel, const Subgroup& image, std::string& note) {
  const std::size_t k = kernel.k, m = kernel.m;
  const SpanQuotient pi(k, m, kernel.span);

  // Discrete part K / (I + W_K).
  std::vector<Vec> kgens, igens;
  for (const auto& l : kernel.lattice) kgens.push_back(pi(l));
  for (const auto& l : image.lattice) igens.push_back(pi(l));
  std::vector<Vec> all = kgens;
  all.insert(all.end(), igens.begin(), igens.end());
  const mpz_class d = common_denominator(all);
  const IntegerMatrix km = scaled_columns(kgens, pi.dim(), d);
  const SmithForm kf = smith_normal_form(km);
  IntegerMatrix coords(kf.rank, igens.size());
  for (std::size_t j = 0; j < igens.size(); ++j) {
    std::vector<mpz_class> b(pi.dim());
    for (std::size_t i = 0; i < pi.dim(); ++i) b[i] = mpq_class(igens[j][i] * d).get_num();
    for (std::size_t i = 0; i < kf.rank; ++i) {
      mpz_class ub = 0;
      for (std::size_t t = 0; t < pi.dim(); ++t) ub += kf.U(i, t) * b[t];
      coords(i, j) = ub / kf.S(i, i);
    }
  }
  const SmithForm cf = smith_normal_form(coords);
  std::vector<mpz_class> torsion;
  for (const auto& f : cf.invariant_factors())
    if (f > 1) torsion.push_back(f);
  const auto free = static_cast<std::int64_t>(kf.rank - cf.rank);

  // Connected part W_K / (W_K cap I) = R^a x (R/Z)^b.
  std::vector<Vec> pi_img;
  for (const auto& l : image.lattice) pi_img.push_back(pi(l));
  const mpz_class di = common_denominator(pi_img);
  const IntegerMatrix relation = integer_kernel(scaled_columns(pi_img, pi.dim(), di));
  std::vector<Vec> inside;
  for (std::size_t c = 0; c < relation.cols(); ++c) {
    Vec u(m);
    for (std::size_t j = 0; j < image.lattice.size(); ++j)
      for (std::size_t i = 0; i < m; ++i) u[i] += relation(j, c) * image.lattice[j][k + i];
    inside.push_back(std::move(u));
  }
  const std::size_t dim_wi = columns_matrix(image.span, m).rank();
  std::vector<Vec> both = image.span;
  both.insert(both.end(), inside.begin(), inside.end());
  const std::size_t circles = columns_matrix(both, m).rank() - dim_wi;
  const std::size_t dim_wk = columns_matrix(kernel.span, m).rank();
  const auto reals = static_cast<std::int64_t>(dim_wk - dim_wi - circles);
  if (circles > 0) note = "circle factors of the homology carry weight tag 0";
  return GroupDescriptor::from_parts(free, torsion, reals, std::vector<std::int64_t>(circles, 0));
}

Subgroup image_of(const RationalMatrix& f, const Layout& a, const Layout& b) {
  Subgroup s{b.k(), b.m(), {}, {}};
  for (std::size_t j = 0; j < a.k(); ++j) {
    Vec col(f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i) col[i] = f(i, j);
    s.lattice.push_back(std::move(col));
  }
  for (auto& r : b.relations()) s.lattice.push_back(std::move(r));
  for (std::size_t j = 0; j < a.m(); ++j) {
    Vec col(b.m());
    for (std::size_t i = 0; i < b.m(); ++i) col[i] = f(b.k() + i, a.k() + j);
    s.span.push_back(std::move(col));
  }
  return s;
}

Subgroup kernel_of(const RationalMatrix& g, const Layout& b, const Layout& c) {
  const std::size_t kb = b.k(), mb = b.m(), kc = c.k(), mc = c.m();
  RationalMatrix gcf(mc, kb), gcc(mc, mb);
  for (std::size_t i = 0; i < mc; ++i) {
    for (std::size_t j = 0; j < kb; ++j) gcf(i, j) = g(kc + i, j);
    for (std::size_t j = 0; j < mb; ++j) gcc(i, j) = g(kc + i, kb + j);
  }
  // J w - G_cf z must lie in the column space of G_cc: P (J w - G_cf z) = 0.
  RationalMatrix p = gcc.left_null_space();
  const std::size_t np = p.rows();
  const std::size_t cols = kb + kc + c.circles;
  RationalMatrix sys(kc + np, cols);
  for (std::size_t i = 0; i < kc; ++i) {
    for (std::size_t j = 0; j < kb; ++j) sys(i, j) = g(i, j);
    if (i >= c.free) sys(i, kb + i) = -c.orders[i - c.free];
  }
  for (std::size_t r = 0; r < np; ++r) {
    for (std::size_t j = 0; j < kb; ++j) {
      mpq_class acc = 0;
      for (std::size_t t = 0; t < mc; ++t) acc += p(r, t) * gcf(t, j);
      sys(kc + r, j) = -acc;
    }
    for (std::size_t w = 0; w < c.circles; ++w) sys(kc + r, kb + kc + w) = p(r, c.reals + w);
  }
  // Clear denominators row by row.
  IntegerMatrix isys(sys.rows(), cols);
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    mpz_class d = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), sys(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) isys(i, j) = mpq_class(sys(i, j) * d).get_num();
  }
  const IntegerMatrix ker = integer_kernel(isys);

  Subgroup s{kb, mb, {}, {}};
  for (std::size_t col = 0; col < ker.cols(); ++col) {
    Vec rhs(mc);
    for (std::size_t w = 0; w < c.circles; ++w) rhs[c.reals + w] = ker(kb + kc + w, col);
    for (std::size_t t = 0; t < mc; ++t)
      for (std::size_t j = 0; j < kb; ++j) rhs[t] -= gcf(t, j) * ker(j, col);
    const auto v = gcc.solve(rhs);
    if (!v) throw Error(ErrorKind::kMalformedInput, "internal: kernel particular solution missing");
    Vec x(kb + mb);
    for (std::size_t j = 0; j < kb; ++j) x[j] = ker(j, col);
    for (std::size_t j = 0; j < mb; ++j) x[kb + j] = (*v)[j];
    s.lattice.push_back(std::move(x));
  }
  s.span = matrix_columns(gcc.null_space());
  return s;
}

void check_shape(const Homomorphism& h, const Layout& s, const Layout& t, std::size_t index) {
  const std::string where = "map " + std::to_string(index) + ": ";
  if (h.fg.rows() != t.k() || h.fg.cols() != s.k())
    throw malformed(where + "fg block must be " + std::to_string(t.k()) + "x" + std::to_string(s.k()) + ", got " +
                    std::to_string(h.fg.rows()) + "x" + std::to_string(h.fg.cols()));
  if (h.cont && h.real_rank) throw malformed(where + "give either a continuous block or a real rank, not both");
  if (h.cont && (h.cont->rows() != t.m() || h.cont->cols() != s.k() + s.m()))
    throw malformed(where + "continuous block must be " + std::to_string(t.m()) + "x" + std::to_string(s.k() + s.m()) +
                    ", got " + std::to_string(h.cont->rows()) + "x" + std::to_string(h.cont->cols()));
  if (!h.cont && !h.real_rank && s.m() > 0 && t.m() > 0)
    throw malformed(where + "continuous coordinates need a continuous block or a real rank");
  if (h.real_rank) {
    if (s.circles > 0 || t.circles > 0) throw malformed(where + "a rank-only real block needs circle-free groups");
    if (*h.real_rank < 0 || static_cast<std::size_t>(*h.real_rank) > std::min(s.m(), t.m()))
      throw malformed(where + "real rank out of range");
  }
}

void check_well_defined(const RationalMatrix& f, const Layout& s, const Layout& t, std::size_t index) {
  for (const auto& rel : s.relations()) {
    if (!t.in_relations(apply(f, rel)))
      throw malformed("map " + std::to_string(index) + " does not respect the relations of its source");
  }
}

bool has_cross_block(const Homomorphism& h, const Layout& s) {
  if (!h.cont) return false;
  for (std::size_t i = 0; i < h.cont->rows(); ++i)
    for (std::size_t j = 0; j < s.k(); ++j)
      if ((*h.cont)(i, j) != 0) return true;
  return false;
}

// Restriction to the finitely generated coordinates.
RationalMatrix fg_matrix(const Homomorphism& h, const Layout& s, const Layout& t) {
  RationalMatrix out(t.k(), s.k());
  for (std::size_t i = 0; i < t.k(); ++i)
    for (std::size_t j = 0; j < s.k(); ++j) out(i, j) = h.fg(i, j);
  return out;
}

std::size_t real_block_rank(const Homomorphism& h, const Layout& s, const Layout& t) {
  if (h.real_rank) return static_cast<std::size_t>(*h.real_rank);
  if (!h.cont) return 0;
  RationalMatrix r(t.m(), s.m());
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < s.m(); ++j) r(i, j) = (*h.cont)(i, s.k() + j);
  return r.rank();
}

Layout discrete_part(const Layout& l) {
  Layout out = l;
  out.reals = 0;
  out.circles = 0;
  return out;
}

NodeReport check_node(std::size_t index, const RationalMatrix& f, const RationalMatrix& g, const Layout& a,
                      const Layout& b, const Layout& c) {
  const Subgroup img = image_of(f, a, b);
  const Subgroup ker = kernel_of(g, b, c);
  if (!contains(ker, img)) return {index, NodeStatus::kNotComplex, std::nullopt, "composite map is nonzero"};
  if (contains(img, ker)) return {index, NodeStatus::kExact, std::nullopt, ""};
  std::string note;
  GroupDescriptor h = quotient(ker, img, note);
  return {index, NodeStatus::kInexact, h, note};
}

}  // namespace

bool ExactnessReport::exact() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const NodeReport& r) { return r.status == NodeStatus::kExact; });
}

ExactnessReport verify_exact(const std::vector<SequenceNode>& seq) {
  if (seq.size() < 3) throw malformed("a sequence needs at least three nodes");
  std::vector<Layout> layouts;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seq[i].group) throw malformed("node " + std::to_string(i) + " has an unknown group");
    layouts.emplace_back(*seq[i].group);
  }
  std::vector<RationalMatrix> full;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!seq[i].map_to_next) throw malformed("node " + std::to_string(i) + " has an unknown map");
    const Homomorphism& h = *seq[i].map_to_next;
    check_shape(h, layouts[i], layouts[i + 1], i);
    full.push_back(full_matrix(h, layouts[i], layouts[i + 1]));
    if (h.real_rank) {
      check_well_defined(fg_matrix(h, layouts[i], layouts[i + 1]), discrete_part(layouts[i]),
                         discrete_part(layouts[i + 1]), i);
    } else {
      check_well_defined(full.back(), layouts[i], layouts[i + 1], i);
    }
  }

  ExactnessReport report;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    const Homomorphism& f = *seq[i - 1].map_to_next;
    const Homomorphism& g = *seq[i].map_to_next;
    const Layout &a = layouts[i - 1], &b = layouts[i], &c = layouts[i + 1];
    if (!f.real_rank && !g.real_rank) {
      report.nodes.push_back(check_node(i, full[i - 1], full[i], a, b, c));
      continue;
    }
    // Rank-only real data: the check splits into a discrete and a real part.
    if (has_cross_block(f, a) || has_cross_block(g, b) || b.circles > 0 || a.circles > 0 || c.circles > 0)
      throw malformed("node " + std::to_string(i) + ": a rank-only real block cannot be combined with cross blocks or circles");
    const Layout da = discrete_part(a), db = discrete_part(b), dc = discrete_part(c);
    NodeReport r = check_node(i, fg_matrix(f, a, b), fg_matrix(g, b, c), da, db, dc);
    const std::size_t rf = real_block_rank(f, a, b), rg = real_block_rank(g, b, c);
    if (rf + rg > b.m()) {
      r = {i, NodeStatus::kNotComplex, std::nullopt, "real ranks exceed the real dimension"};
    } else if (r.status != NodeStatus::kNotComplex) {
      const auto gap = static_cast<std::int64_t>(b.m() - rf - rg);
      if (gap > 0) {
        GroupDescriptor h = r.homology.value_or(GroupDescriptor::zero()) + GroupDescriptor::reals(gap);
        r = {i, NodeStatus::kInexact, h, "real part checked by rank only"};
      } else if (r.status == NodeStatus::kExact) {
        r.note = "real part checked by rank only";
      }
    }
    report.nodes.push_back(std::move(r));
  }
  return report;
}

namespace {

using Partition = std::vector<int>;

// Does an LR tableau of shape nu / lambda with content mu exist?
bool lr_positive(const Partition& nu, const Partition& lambda, const Partition& mu) {
  const std::size_t rows = nu.size();
  Partition lam = lambda;
  lam.resize(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    if (lam[i] > nu[i]) return false;
  // cells filled row by row, left to right
  std::vector<std::vector<int>> t(rows);
  for (std::size_t i = 0; i < rows; ++i) t[i].assign(nu[i], 0);
  std::vector<std::pair<std::size_t, int>> cells;
  for (std::size_t i = 0; i < rows; ++i)
    for (int j = lam[i]; j < nu[i]; ++j) cells.emplace_back(i, j);
  std::vector<int> used(mu.size(), 0);

  // Reading word is right-to-left across rows top to bottom; filling rows
  // right to left keeps the lattice check incremental.
  std::vector<std::pair<std::size_t, int>> order;
  for (std::size_t i = 0; i < rows; ++i)
    for (int j = nu[i] - 1; j >= lam[i]; --j) order.emplace_back(i, j);

  std::function<bool(std::size_t)> fill = [&](std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    const auto [i, j] = order[pos];
    for (std::size_t v = 0; v < mu.size(); ++v) {
      if (used[v] >= mu[v]) continue;
      if (v > 0 && used[v] + 1 > used[v - 1]) continue;  // lattice word
      const int val = static_cast<int>(v) + 1;
      // row weakly increasing: the cell to the right (already filled) must be >= val
      if (j + 1 < nu[i] && t[i][j + 1] != 0 && t[i][j + 1] < val) continue;
      // column strictly increasing: above must be < val (above is filled or in lambda)
      if (i > 0 && j < nu[i - 1] && j >= lam[i - 1] && t[i - 1][j] >= val) continue;
      t[i][j] = val;
      ++used[v];
      if (fill(pos + 1)) return true;
      --used[v];
      t[i][j] = 0;
    }
    return false;
  };
  return fill(0);
}

void partitions_of(int n, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_of(n - part, part, cur, out);
    cur.pop_back();
  }
}

// Exponent partitions per prime of a finite descriptor.
std::map<mpz_class, Partition> primary_parts(const GroupDescriptor& g) {
  std::map<mpz_class, Partition> out;
  for (const auto& q : g.torsion()) {
    const auto f = factorize(q);
    out[f.front().first].push_back(static_cast<int>(f.front().second));
  }
  for (auto& [p, part] : out) std::sort(part.rbegin(), part.rend());
  return out;
}

std::vector<GroupDescriptor> finite_extensions(const GroupDescriptor& a, const GroupDescriptor& c) {
  const auto pa = primary_parts(a), pc = primary_parts(c);
  std::map<mpz_class, std::pair<Partition, Partition>> primes;
  for (const auto& [p, part] : pa) primes[p].first = part;
  for (const auto& [p, part] : pc) primes[p].second = part;

  std::vector<std::vector<mpz_class>> combos{{}};
  for (const auto& [p, lm] : primes) {
    const auto& [lambda, mu] = lm;
    int total = 0;
    for (int x : lambda) total += x;
    for (int x : mu) total += x;
    std::vector<Partition> nus;
    Partition cur;
    partitions_of(total, total, cur, nus);
    std::vector<std::vector<mpz_class>> next;
    for (const auto& nu : nus) {
      if (!lr_positive(nu, lambda, mu)) continue;
      std::vector<mpz_class> orders;
      for (int e : nu) {
        mpz_class q;
        mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
        orders.push_back(q);
      }
      for (const auto& prefix : combos) {
        auto merged = prefix;
        merged.insert(merged.end(), orders.begin(), orders.end());
        next.push_back(std::move(merged));
      }
    }
    combos = std::move(next);
  }
  std::vector<GroupDescriptor> out;
  for (const auto& orders : combos) out.push_back(GroupDescriptor::from_parts(0, orders, 0, {}));
  return out;
}

}  // namespace

ShortExactSolution solve_short_exact(const GroupDescriptor& a, const GroupDescriptor& c, const ExtensionHints& hints) {
  ShortExactSolution out;
  if (hints.lattice_quotient) {
    // c is the middle term here.
    if (!a.is_free() || c.free_rank() != 0 || !c.torsion().empty() || !c.circle_factors().empty() ||
        c.real_rank() < a.free_rank()) {
      out.note = "lattice quotient needs a free A and a real vector space of at least its rank";
      return out;
    }
    if (hints.weight < 0 || !is_even(hints.weight)) {
      out.note = "circle weight tags must be even and nonnegative";
      return out;
    }
    out.group = GroupDescriptor::from_parts(0, {}, c.real_rank() - a.free_rank(),
                                            std::vector<std::int64_t>(static_cast<std::size_t>(a.free_rank()), hints.weight));
    out.note = "quotient of a vector space by a full lattice";
    return out;
  }
  if (hints.split) {
    out.group = a + c;
    out.note = "split by hint";
    return out;
  }
  if (c.is_free()) {
    out.group = a + c;
    out.note = "C is free";
    return out;
  }
  if (a.free_rank() == 0 && a.torsion().empty()) {
    out.group = a + c;
    out.note = "A is divisible";
    return out;
  }
  if (a.is_finite() && c.is_finite()) {
    out.candidates = finite_extensions(a, c);
    if (out.candidates.size() == 1) {
      out.group = out.candidates.front();
      out.candidates.clear();
      out.note = "unique extension of finite groups";
    } else {
      out.note = "extension of finite groups not determined";
    }
    return out;
  }
  out.note = "extension not determined by A and C";
  return out;
}

namespace {

// Greedy matching of the summands of x into x + y (as laid out by +=).
struct SumEmbedding {
  std::vector<std::size_t> fg_a, fg_c, cont_a, cont_c;
};

SumEmbedding embed_sum(const GroupDescriptor& a, const GroupDescriptor& c, const GroupDescriptor& b) {
  SumEmbedding e;
  const Layout la(a), lc(c), lb(b);
  for (std::size_t i = 0; i < la.free; ++i) e.fg_a.push_back(i);
  for (std::size_t i = 0; i < lc.free; ++i) e.fg_c.push_back(la.free + i);
  std::vector<bool> taken(lb.orders.size(), false);
  auto take_order = [&](const mpz_class& q) {
    for (std::size_t j = 0; j < lb.orders.size(); ++j)
      if (!taken[j] && lb.orders[j] == q) {
        taken[j] = true;
        return lb.free + j;
      }
    throw Error(ErrorKind::kMalformedInput, "internal: torsion summand missing from direct sum");
  };
  for (const auto& q : la.orders) e.fg_a.push_back(take_order(q));
  for (const auto& q : lc.orders) e.fg_c.push_back(take_order(q));

  for (std::size_t i = 0; i < la.reals; ++i) e.cont_a.push_back(i);
  for (std::size_t i = 0; i < lc.reals; ++i) e.cont_c.push_back(la.reals + i);
  std::vector<bool> ctaken(lb.circles, false);
  const auto& bw = b.circle_factors();
  auto take_circle = [&](std::int64_t w) {
    for (std::size_t j = 0; j < bw.size(); ++j)
      if (!ctaken[j] && bw[j] == w) {
        ctaken[j] = true;
        return lb.reals + j;
      }
    throw Error(ErrorKind::kMalformedInput, "internal: circle summand missing from direct sum");
  };
  for (auto w : a.circle_factors()) e.cont_a.push_back(take_circle(w));
  for (auto w : c.circle_factors()) e.cont_c.push_back(take_circle(w));
  return e;
}

Homomorphism zero_map(const GroupDescriptor& s, const GroupDescriptor& t) {
  const Layout ls(s), lt(t);
  return {IntegerMatrix(lt.k(), ls.k()), IntegerMatrix(lt.m(), ls.k() + ls.m()), std::nullopt};
}

}  // namespace

std::vector<SequenceNode> split_sequence(const GroupDescriptor& a, const GroupDescriptor& c) {
  const GroupDescriptor b = a + c;
  const Layout la(a), lb(b), lc(c);
  const SumEmbedding e = embed_sum(a, c, b);

  Homomorphism inc{IntegerMatrix(lb.k(), la.k()), IntegerMatrix(lb.m(), la.k() + la.m()), std::nullopt};
  for (std::size_t j = 0; j < la.k(); ++j) inc.fg(e.fg_a[j], j) = 1;
  for (std::size_t j = 0; j < la.m(); ++j) (*inc.cont)(e.cont_a[j], la.k() + j) = 1;

  Homomorphism proj{IntegerMatrix(lc.k(), lb.k()), IntegerMatrix(lc.m(), lb.k() + lb.m()), std::nullopt};
  for (std::size_t j = 0; j < lc.k(); ++j) proj.fg(j, e.fg_c[j]) = 1;
  for (std::size_t j = 0; j < lc.m(); ++j) (*proj.cont)(j, lb.k() + e.cont_c[j]) = 1;

  const GroupDescriptor z = GroupDescriptor::zero();
  return {{z, zero_map(z, a)}, {a, inc}, {b, proj}, {c, zero_map(c, z)}, {z, std::nullopt}};
}

std::vector<SequenceNode> e_sequence(std::int64_t k) {
  if (k < 1) throw malformed("(e_k) needs k >= 1");
  const std::int64_t w = checked_mul(2, k);
  const GroupDescriptor z = GroupDescriptor::zero(), lattice = GroupDescriptor::integers(1),
                        line = GroupDescriptor::reals(1), circle = deligne_point_group({1, w});
  // Z(2k) -> R sends the generator to (2 pi i)^{2k}, one lattice unit.
  Homomorphism inc{IntegerMatrix(0, 1), IntegerMatrix{{1}}, std::nullopt};
  Homomorphism quo{IntegerMatrix(0, 0), IntegerMatrix{{1}}, std::nullopt};
  return {{z, zero_map(z, lattice)}, {lattice, inc}, {line, quo}, {circle, zero_map(circle, z)}, {z, std::nullopt}};
}

std::vector<SequenceNode> o_sequence(std::int64_t k) {
  if (k < 1) throw malformed("(o_k) needs k >= 1");
  const std::int64_t p = checked_sub(checked_mul(2, k), 1);
  const GroupDescriptor z = GroupDescriptor::zero(), line = GroupDescriptor::reals(1),
                        units = deligne_point_group({1, p}), sign = GroupDescriptor::cyclic(2);
  // R^x = Z/2 + R: the sign coordinate is discrete, log|x| continuous.
  Homomorphism exp_map{IntegerMatrix(1, 0), IntegerMatrix{{1}}, std::nullopt};
  Homomorphism sign_map{IntegerMatrix{{1}}, IntegerMatrix(0, 2), std::nullopt};
  return {{z, zero_map(z, line)}, {line, exp_map}, {units, sign_map}, {sign, zero_map(sign, z)}, {z, std::nullopt}};
}

}  // namespace rdc
