#include "rdc/group.hpp"

#include <algorithm>
#include <map>

#include "rdc/error.hpp"

namespace rdc {

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eed);
  for (;;) {
    mpz_class y = rng.get_z_range(n - 1) + 1;
    mpz_class c = rng.get_z_range(n - 1) + 1;
    mpz_class g = 1, q = 1, x, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factorize(mpz_class n) {
  if (n <= 0) throw malformed("factorize expects a positive integer");
  std::map<mpz_class, unsigned> found;
  for (unsigned long p = 2; p < 10000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ++found[mpz_class(p)];
      n /= p;
    }
  }
  factor_into(n, found);
  return {found.begin(), found.end()};
}

GroupDescriptor GroupDescriptor::integers(std::int64_t rank) {
  if (rank < 0) throw malformed("negative free rank");
  GroupDescriptor g;
  g.free_rank_ = rank;
  return g;
}

GroupDescriptor GroupDescriptor::cyclic(const mpz_class& order) {
  if (order < 0) throw malformed("negative cyclic order");
  GroupDescriptor g;
  if (order == 0) {
    g.free_rank_ = 1;
    return g;
  }
  for (const auto& [prime, exponent] : factorize(order)) {
    mpz_class pp;
    mpz_pow_ui(pp.get_mpz_t(), prime.get_mpz_t(), exponent);
    g.torsion_.push_back(pp);
  }
  std::sort(g.torsion_.begin(), g.torsion_.end());
  return g;
}

GroupDescriptor GroupDescriptor::reals(std::int64_t rank) {
  if (rank < 0) throw malformed("negative real rank");
  GroupDescriptor g;
  g.real_rank_ = rank;
  return g;
}

GroupDescriptor GroupDescriptor::circle(std::int64_t weight) {
  if (weight < 0) throw malformed("circle weight must be nonnegative");
  GroupDescriptor g;
  g.circles_.push_back(weight);
  return g;
}

GroupDescriptor GroupDescriptor::from_parts(std::int64_t free_rank, const std::vector<mpz_class>& cyclic_orders,
                                            std::int64_t real_rank, std::vector<std::int64_t> circle_weights) {
  GroupDescriptor g = integers(free_rank) + reals(real_rank);
  for (const auto& order : cyclic_orders) {
    if (order <= 0) throw malformed("torsion orders must be positive");
    if (order == 2) g.torsion_.push_back(order);  // the common case, no factoring
    else g += cyclic(order);
  }
  for (auto w : circle_weights)
    if (w < 0) throw malformed("circle weight must be nonnegative");
  g.circles_ = std::move(circle_weights);
  std::sort(g.torsion_.begin(), g.torsion_.end());
  std::sort(g.circles_.begin(), g.circles_.end());
  return g;
}

mpz_class GroupDescriptor::torsion_order() const {
  mpz_class order = 1;
  for (const auto& t : torsion_) order *= t;
  return order;
}

GroupDescriptor& GroupDescriptor::operator+=(const GroupDescriptor& other) {
  free_rank_ += other.free_rank_;
  real_rank_ += other.real_rank_;
  torsion_.insert(torsion_.end(), other.torsion_.begin(), other.torsion_.end());
  std::sort(torsion_.begin(), torsion_.end());
  circles_.insert(circles_.end(), other.circles_.begin(), other.circles_.end());
  std::sort(circles_.begin(), circles_.end());
  return *this;
}

namespace {

std::string with_power(const std::string& base, std::int64_t count, bool bracket) {
  if (count == 1) return base;
  return (bracket ? "(" + base + ")" : base) + "^" + std::to_string(count);
}

}  // namespace

std::string GroupDescriptor::to_text() const {
  std::vector<std::string> parts;
  if (free_rank_ > 0) parts.push_back(with_power("Z", free_rank_, false));
  if (real_rank_ > 0) parts.push_back(with_power("R", real_rank_, false));
  for (std::size_t i = 0; i < circles_.size();) {
    std::size_t j = i;
    while (j < circles_.size() && circles_[j] == circles_[i]) ++j;
    std::string base = circles_[i] == 0 ? "R/Z" : "R/Z(" + std::to_string(circles_[i]) + ")";
    parts.push_back(with_power(base, static_cast<std::int64_t>(j - i), true));
    i = j;
  }
  for (std::size_t i = 0; i < torsion_.size();) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
    parts.push_back(with_power("Z/" + torsion_[i].get_str(), static_cast<std::int64_t>(j - i), true));
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

}  // namespace rdc
