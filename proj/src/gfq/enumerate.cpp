#include "topcoh/gfq/enumerate.hpp"

#include <string>

#include "topcoh/errors.hpp"

namespace topcoh::gfq {

namespace {

std::uint64_t checked_power(std::uint32_t p, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > (std::uint64_t{1} << 40) / p) throw TooLargeError("F_p^n too large to enumerate", "p^" + std::to_string(n));
    total *= p;
  }
  return total;
}

// Calls fn(v) for every nonzero v in F_p^n whose first nonzero entry lies in `leads`.
template <typename Fn>
void for_each_with_lead(std::size_t n, std::uint32_t p, Residue max_lead, Fn&& fn) {
  const std::uint64_t total = checked_power(p, n);
  for (std::uint64_t code = 1; code < total; ++code) {
    Vector v = decode(code, n, p);
    std::size_t i = 0;
    while (v[i] == 0) ++i;
    if (v[i] <= max_lead) fn(std::move(v));
  }
}

}  // namespace

std::vector<PmVector> enumerate_pm_vectors(std::size_t n, std::uint32_t p) {
  if (n < 1) throw DomainError("enumerate_pm_vectors requires n >= 1");
  Field f(p);
  std::vector<PmVector> out;
  for_each_with_lead(n, p, p == 2 ? 1 : (p - 1) / 2, [&](Vector v) { out.push_back(canonicalize_pm(f, std::move(v))); });
  return out;
}

std::vector<ProjVector> enumerate_proj_vectors(std::size_t n, std::uint32_t p) {
  if (n < 1) throw DomainError("enumerate_proj_vectors requires n >= 1");
  Field f(p);
  std::vector<ProjVector> out;
  for_each_with_lead(n, p, 1, [&](Vector v) { out.push_back(canonicalize_proj(f, std::move(v))); });
  return out;
}

std::vector<Subspace> enumerate_subspaces(std::size_t n, std::uint32_t p, std::size_t k) {
  if (k > n) throw DomainError("enumerate_subspaces requires k <= n");
  (void)Field(p);
  std::vector<Subspace> out;
  if (k == 0) {
    out.push_back(subspace_from_echelon({}, n));
    return out;
  }
  // Walk pivot sets in lexicographic order; for each, fill the free entries
  // (right of the pivot, outside pivot columns) with every assignment.
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = piv[r] + 1; c < n; ++c)
        if (!is_pivot[c]) free_slots.emplace_back(r, c);
    const std::uint64_t fills = checked_power(p, free_slots.size());
    for (std::uint64_t code = 0; code < fills; ++code) {
      std::vector<Vector> rows(k, Vector(n, 0));
      for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = 1;
      std::uint64_t c = code;
      for (std::size_t s = free_slots.size(); s-- > 0;) {
        rows[free_slots[s].first][free_slots[s].second] = static_cast<Residue>(c % p);
        c /= p;
      }
      out.push_back(subspace_from_echelon(std::move(rows), n));
    }
    // Next k-subset of {0..n-1}.
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

mpz_class count_avoiding_line(std::size_t n, std::uint32_t p, std::size_t k, const Subspace& line) {
  if (line.dim() != 1 || line.ambient() != n) throw DomainError("count_avoiding_line needs a line in F_p^n");
  if (k < 1 || k + 1 > n) throw DomainError("count_avoiding_line requires 1 <= k <= n-1");
  Field f(p);
  const Vector& x = line.basis().front();
  mpz_class count = 0;
  for (const auto& w : enumerate_subspaces(n, p, k))
    if (!contains(f, w, x)) ++count;
  return count;
}

}  // namespace topcoh::gfq
