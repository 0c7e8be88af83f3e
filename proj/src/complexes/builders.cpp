#include "topcoh/complexes/builders.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "topcoh/errors.hpp"
#include "topcoh/formulas/formulas.hpp"
#include "topcoh/gfq/enumerate.hpp"
#include "topcoh/gfq/linalg.hpp"

namespace topcoh::complexes {

namespace {

using gfq::Field;
using gfq::Residue;
using gfq::Vector;

enum class Coefficients { None, Units, PlusMinusOne };

struct BasisRules {
  Family family;
  bool projective = false;
  bool det_one = false;
  Coefficients augment = Coefficients::None;
};

BasisRules rules_for(Family f) {
  switch (f) {
    case Family::BPm: return {f, false, false, Coefficients::None};
    case Family::BProj: return {f, true, false, Coefficients::None};
    case Family::BDPm: return {f, false, true, Coefficients::None};
    case Family::BAPm: return {f, false, false, Coefficients::Units};
    case Family::BDAPm:
    case Family::BDAPrime: return {f, false, true, Coefficients::PlusMinusOne};
    default: throw DomainError("not a basis-complex family: " + family_name(f));
  }
}

mpz_class pow_mpz(std::uint32_t p, std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

mpz_class factorial(std::size_t k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

// Number of +-classes of lambda*a + nu*b for fixed independent a, b.
mpz_class augment_classes(Coefficients c, std::uint32_t p) {
  if (p == 2) return 1;
  if (c == Coefficients::PlusMinusOne) return 2;
  return mpz_class(p - 1) * (p - 1) / 2;
}

struct BasisCounts {
  std::vector<mpz_class> standard;   // by vertex count k = 0..n
  std::vector<mpz_class> augmented;  // by vertex count k+1, indexed by k
};

BasisCounts basis_counts(const BasisRules& r, std::size_t n, std::size_t m, std::uint32_t p) {
  const std::size_t big_n = n + m;
  const mpz_class per_vertex = r.projective ? mpz_class(p - 1) : mpz_class(p == 2 ? 1 : 2);
  BasisCounts out;
  out.standard.assign(n + 1, 0);
  out.augmented.assign(n + 1, 0);
  mpz_class ordered = 1;
  mpz_class scale = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      ordered *= pow_mpz(p, big_n) - pow_mpz(p, m + k - 1);
      scale *= per_vertex;
    }
    mpz_class count = ordered / (factorial(k) * scale);
    // Full bases: det is uniform over F^x, keep the two classes +-1.
    if (r.det_one && k == n && k > 0 && p > 3) count = count * 2 / (p - 1);
    out.standard[k] = count;
  }
  if (r.augment != Coefficients::None) {
    const mpz_class c = augment_classes(r.augment, p);
    for (std::size_t k = 1; k <= n; ++k) {
      mpz_class internal = k >= 2 ? out.standard[k] * (k * (k - 1) / 2) * c / 3 : mpz_class(0);
      mpz_class external = out.standard[k] * mpz_class(k) * mpz_class(m) * c / 2;
      out.augmented[k] = internal + external;
    }
  }
  return out;
}

mpz_class tits_flags(std::size_t n, std::uint32_t p, bool oriented) {
  if (n < 2) return 0;
  const mpz_class o = p == 2 ? 1 : (p - 1) / 2;
  mpz_class total = 0;
  // Chains of proper nonzero subspaces with dimension set `mask` over {1..n-1}.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    mpz_class count = 1;
    std::size_t prev = n;
    for (std::size_t d = n - 1; d >= 1; --d) {
      if (!(mask >> (d - 1) & 1)) continue;
      count *= formulas::gaussian_binomial(prev, d, p);
      if (oriented) count *= o;
      prev = d;
    }
    total += count;
  }
  return total;
}

void check_cap(Family family, std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt) {
  const mpz_class projected = projected_size(family, n, m, p);
  if (projected > mpz_class(static_cast<unsigned long>(opt.cap))) {
    throw TooLargeError("building " + family_name(family) + " with n=" + std::to_string(n) + " m=" +
                            std::to_string(m) + " p=" + std::to_string(p) + " exceeds the cap of " +
                            std::to_string(opt.cap) + " simplices",
                        projected.get_str());
  }
}

// Coefficients of w in the independent family `basis`, or nullopt if w is outside its span.
std::optional<Vector> coordinates(const Field& f, const std::vector<Vector>& basis, const Vector& w) {
  const std::size_t rows = w.size(), cols = basis.size();
  // Augmented matrix [basis | w], reduced column by column.
  std::vector<Vector> a(rows, Vector(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = basis[j][i];
    a[i][cols] = w[i];
  }
  std::vector<std::size_t> pivot_row(cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    // Basis columns are independent, so a pivot always exists.
    std::swap(a[piv], a[r]);
    const Residue inv = f.inv(a[r][c]);
    for (auto& x : a[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Residue factor = a[i][c];
      for (std::size_t j = 0; j <= cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivot_row[c] = r++;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;
  Vector coeffs(cols);
  for (std::size_t c = 0; c < cols; ++c) coeffs[c] = a[pivot_row[c]][cols];
  return coeffs;
}

bool det_is_pm_one(const Field& f, const std::vector<Vector>& columns) {
  const std::size_t n = columns.size();
  return f.is_plus_minus_one(gfq::det(f, gfq::Matrix::from_columns(columns, n)));
}

// Depth-first enumeration of simplices in the link of {e_1..e_m} inside the
// basis complex on F_p^(n+m). The frame holds e_1..e_m followed by the chosen
// vertex representatives.
class BasisEnumerator {
 public:
  BasisEnumerator(const BasisRules& rules, std::size_t n, std::size_t m, std::uint32_t p,
                  const std::vector<Vector>& reps)
      : rules_(rules), n_(n), m_(m), f_(p), reps_(reps) {}

  // All simplices whose smallest vertex is `root`, in lexicographic order per dimension.
  std::vector<SimplexLayer> from_root(VertexId root) {
    std::vector<SimplexLayer> out;
    for (int d = 0; d <= static_cast<int>(n_); ++d) out.emplace_back(d);
    frame_.clear();
    for (std::size_t i = 0; i < m_; ++i) {
      Vector e(n_ + m_, 0);
      e[i] = 1;
      frame_.push_back(std::move(e));
    }
    ids_.clear();
    core_.reset();
    dependent_ = -1;
    if (!admissible_vertex(root)) return {};
    push(root, std::nullopt);
    out[0].push(ids_, SimplexKind::Standard);
    descend(out);
    return out;
  }

 private:
  struct Extension {
    std::optional<AdditiveCore> core;
  };

  bool admissible_vertex(VertexId v) {
    // The frame alone is a partial basis; adding v must keep a simplex.
    auto ext = extend(v);
    return ext.has_value() && !ext->core;
  }

  // Whether frame + {v} is a simplex; reports the additive core it creates.
  std::optional<Extension> extend(VertexId v) {
    const Vector& w = reps_[v];
    const std::size_t size_after = frame_.size() + 1;  // frame incl. e_i, plus w
    if (!core_) {
      auto coeffs = coordinates(f_, frame_, w);
      if (!coeffs) {
        if (rules_.det_one && size_after == n_ + m_) {
          std::vector<Vector> cols = frame_;
          cols.push_back(w);
          if (!det_is_pm_one(f_, cols)) return std::nullopt;
        }
        return Extension{};
      }
      if (rules_.augment == Coefficients::None) return std::nullopt;
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < coeffs->size(); ++i)
        if ((*coeffs)[i] != 0) support.push_back(i);
      if (support.size() != 2) return std::nullopt;
      if (rules_.augment == Coefficients::PlusMinusOne)
        for (auto i : support)
          if (!f_.is_plus_minus_one((*coeffs)[i])) return std::nullopt;
      AdditiveCore core;
      const bool a_external = support[0] < m_;
      const bool b_external = support[1] < m_;
      if (a_external && b_external) return std::nullopt;  // w in span(e_1..e_m)
      if (a_external || b_external) {
        const std::size_t inner = a_external ? support[1] : support[0];
        const std::size_t outer = a_external ? support[0] : support[1];
        core.ids = {std::min(ids_[inner - m_], v), std::max(ids_[inner - m_], v), 0};
        core.size = 2;
        core.external = static_cast<std::int32_t>(outer);
      } else {
        core.ids = {ids_[support[0] - m_], ids_[support[1] - m_], v};
        std::sort(core.ids.begin(), core.ids.end());
        core.size = 3;
      }
      return Extension{core};
    }
    // Already augmented: w must be independent of everything in the frame.
    std::vector<Vector> independent;
    for (std::size_t i = 0; i < frame_.size(); ++i)
      if (static_cast<std::ptrdiff_t>(i) != dependent_) independent.push_back(frame_[i]);
    if (coordinates(f_, independent, w)) return std::nullopt;
    if (rules_.det_one && independent.size() + 1 == n_ + m_) {
      independent.push_back(w);
      if (!det_is_pm_one(f_, independent)) return std::nullopt;
    }
    return Extension{core_};
  }

  void push(VertexId v, std::optional<AdditiveCore> new_core) {
    frame_.push_back(reps_[v]);
    ids_.push_back(v);
    if (new_core && !core_) {
      core_ = new_core;
      dependent_ = static_cast<std::ptrdiff_t>(frame_.size()) - 1;
    }
  }

  void pop() {
    if (core_ && dependent_ == static_cast<std::ptrdiff_t>(frame_.size()) - 1) {
      core_.reset();
      dependent_ = -1;
    }
    frame_.pop_back();
    ids_.pop_back();
  }

  void descend(std::vector<SimplexLayer>& out) {
    const std::size_t max_vertices = rules_.augment == Coefficients::None ? n_ : n_ + 1;
    if (ids_.size() >= max_vertices) return;
    for (VertexId v = ids_.back() + 1; v < reps_.size(); ++v) {
      auto ext = extend(v);
      if (!ext) continue;
      if (rules_.family == Family::BDAPrime) {
        // Proper span: standard sets below n vectors, augmented sets below n+1.
        const std::size_t rank_after = ids_.size() + 1 - ((core_ || ext->core) ? 1 : 0);
        if (rank_after >= n_) continue;
      }
      push(v, ext->core);
      SimplexKind kind = SimplexKind::Standard;
      if (core_) kind = core_->size == 3 ? SimplexKind::InternallyAdditive : SimplexKind::ExternallyAdditive;
      out[ids_.size() - 1].push(ids_, kind, core_);
      descend(out);
      pop();
    }
  }

  BasisRules rules_;
  std::size_t n_, m_;
  Field f_;
  const std::vector<Vector>& reps_;
  std::vector<Vector> frame_;
  std::vector<VertexId> ids_;
  std::optional<AdditiveCore> core_;
  std::ptrdiff_t dependent_ = -1;  // frame index of the vertex that closed the core
};

// Runs per-root enumeration (in parallel when requested) and merges the
// per-root layers in root order, which keeps the output lexicographic.
template <typename PerRoot>
void merge_roots(SimplicialComplex& k, std::size_t roots, Execution exec, PerRoot&& per_root) {
  std::vector<std::vector<SimplexLayer>> parts(roots);
  if (exec == Execution::Parallel) {
    const long count = static_cast<long>(roots);
#pragma omp parallel for schedule(dynamic, 1)
    for (long r = 0; r < count; ++r) parts[static_cast<std::size_t>(r)] = per_root(static_cast<VertexId>(r));
  } else {
    for (std::size_t r = 0; r < roots; ++r) parts[r] = per_root(static_cast<VertexId>(r));
  }
  std::size_t depth = 0;
  for (const auto& part : parts)
    for (const auto& layer : part)
      if (!layer.empty()) depth = std::max(depth, static_cast<std::size_t>(layer.dim()) + 1);
  for (std::size_t d = 0; d < depth; ++d) {
    SimplexLayer& target = k.mutable_layer(static_cast<int>(d));
    for (const auto& part : parts) {
      if (d >= part.size()) continue;
      const SimplexLayer& src = part[d];
      for (std::size_t i = 0; i < src.size(); ++i) target.push(src.vertices(i), src.kind(i), src.core(i));
    }
    target.canonicalize();
  }
  k.trim_empty_layers();
}

SimplicialComplex build_basis_family(Family family, std::size_t n, std::size_t m, std::uint32_t p,
                                     const BuildOptions& opt) {
  const BasisRules rules = rules_for(family);
  if (n + m < 1) throw DomainError("basis complexes need n + m >= 1");
  const Field f(p);
  check_cap(family, n, m, p, opt);

  const std::size_t big_n = n + m;
  std::vector<Vector> all;
  if (rules.projective) {
    for (auto& v : gfq::enumerate_proj_vectors(big_n, p)) all.push_back(v.rep());
  } else {
    for (auto& v : gfq::enumerate_pm_vectors(big_n, p)) all.push_back(v.rep());
  }
  // Vertices: vectors outside span(e_1..e_m), i.e. nonzero beyond the first m coordinates.
  std::vector<Vector> reps;
  for (auto& v : all)
    if (std::any_of(v.begin() + static_cast<std::ptrdiff_t>(m), v.end(), [](Residue x) { return x != 0; }))
      reps.push_back(std::move(v));
  if (n == 0) reps.clear();

  SimplicialComplex k(family, n, m, p);
  std::vector<VertexLabel> labels(reps.begin(), reps.end());
  k.set_labels(std::move(labels));
  merge_roots(k, reps.size(), opt.exec, [&](VertexId root) {
    BasisEnumerator e(rules, n, m, p, reps);
    return e.from_root(root);
  });
  // BD with m > 0 may drop vertices whose det condition already fails (n = 1).
  // Keep the vertex table consistent with stored 0-simplices.
  if (k.count(0) != k.vertex_count()) {
    std::vector<VertexId> kept;
    if (k.dim() >= 0)
      for (std::size_t i = 0; i < k.layer(0).size(); ++i) kept.push_back(k.layer(0).vertices(i)[0]);
    std::vector<std::vector<VertexId>> unused;
    SimplicialComplex relabeled(family, n, m, p);
    std::vector<VertexLabel> kept_labels;
    for (VertexId v : kept) kept_labels.push_back(k.label(v));
    relabeled.set_labels(std::move(kept_labels));
    auto renumber = [&](VertexId v) {
      return static_cast<VertexId>(std::lower_bound(kept.begin(), kept.end(), v) - kept.begin());
    };
    for (int d = 0; d <= k.dim(); ++d) {
      const auto& src = k.layer(d);
      SimplexLayer& dst = relabeled.mutable_layer(d);
      std::vector<VertexId> vs;
      for (std::size_t i = 0; i < src.size(); ++i) {
        vs.clear();
        for (VertexId v : src.vertices(i)) vs.push_back(renumber(v));
        auto core = src.core(i);
        if (core)
          for (std::uint8_t j = 0; j < core->size; ++j) core->ids[j] = renumber(core->ids[j]);
        dst.push(vs, src.kind(i), core);
      }
    }
    k = std::move(relabeled);
  }
  return k;
}

VertexLabel subspace_label(std::size_t dim, Residue orient, const gfq::Subspace& s) {
  VertexLabel label{static_cast<std::uint32_t>(dim), orient};
  for (const auto& row : s.basis()) label.insert(label.end(), row.begin(), row.end());
  return label;
}

SimplicialComplex build_flag_complex(Family family, std::size_t n, std::uint32_t p, const BuildOptions& opt) {
  if (n < 1) throw DomainError("Tits buildings need n >= 1");
  const Field f(p);
  check_cap(family, n, 0, p, opt);
  const bool oriented = family == Family::TitsOriented;

  struct Node {
    VertexLabel label;
    gfq::Subspace space;
  };
  std::vector<Node> nodes;
  for (std::size_t d = 1; d < n; ++d) {
    for (auto& s : gfq::enumerate_subspaces(n, p, d)) {
      if (oriented) {
        for (auto o : gfq::all_orientations(f)) nodes.push_back({subspace_label(d, o.cls, s), s});
      } else {
        nodes.push_back({subspace_label(d, 0, s), s});
      }
    }
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.label < b.label; });

  // Strict containment ignoring orientation; labels sort by dimension first,
  // so every chain is increasing in vertex id.
  const std::size_t count = nodes.size();
  std::vector<std::vector<VertexId>> up(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (nodes[j].space.dim() > nodes[i].space.dim() && gfq::contains(f, nodes[j].space, nodes[i].space))
        up[i].push_back(static_cast<VertexId>(j));

  SimplicialComplex k(family, n, 0, p);
  std::vector<VertexLabel> labels;
  for (auto& node : nodes) labels.push_back(node.label);
  k.set_labels(std::move(labels));
  merge_roots(k, count, opt.exec, [&](VertexId root) {
    std::vector<SimplexLayer> out;
    for (int d = 0; d + 1 < static_cast<int>(n); ++d) out.emplace_back(d);
    std::vector<VertexId> chain{root};
    auto walk = [&](auto&& self) -> void {
      out[chain.size() - 1].push(chain, SimplexKind::Standard);
      for (VertexId next : up[chain.back()]) {
        chain.push_back(next);
        self(self);
        chain.pop_back();
      }
    };
    walk(walk);
    return out;
  });
  return k;
}

}  // namespace

mpz_class projected_size(Family family, std::size_t n, std::size_t m, std::uint32_t p) {
  (void)Field(p);
  switch (family) {
    case Family::Tits: return tits_flags(n, p, false);
    case Family::TitsOriented: return tits_flags(n, p, true);
    case Family::Derived: throw DomainError("no projection for derived complexes");
    default: break;
  }
  const BasisRules rules = rules_for(family);
  if (family == Family::BDAPrime) m = 0;
  const BasisCounts c = basis_counts(rules, n, m, p);
  mpz_class total = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (family == Family::BDAPrime) {
      if (k < n) total += c.standard[k] + c.augmented[k];
    } else {
      total += c.standard[k] + c.augmented[k];
    }
  }
  return total;
}

SimplicialComplex build_B_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt) {
  return build_basis_family(Family::BPm, n, m, p, opt);
}
SimplicialComplex build_B_proj(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt) {
  return build_basis_family(Family::BProj, n, m, p, opt);
}
SimplicialComplex build_BD_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt) {
  return build_basis_family(Family::BDPm, n, m, p, opt);
}
SimplicialComplex build_BA_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt) {
  if (n < 1) throw DomainError("augmented complexes need n >= 1");
  return build_basis_family(Family::BAPm, n, m, p, opt);
}
SimplicialComplex build_BDA_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt) {
  if (n < 1) throw DomainError("augmented complexes need n >= 1");
  return build_basis_family(Family::BDAPm, n, m, p, opt);
}
SimplicialComplex build_BDA_prime(std::size_t n, std::uint32_t p, const BuildOptions& opt) {
  if (n < 2) throw DomainError("BDA' needs n >= 2");
  return build_basis_family(Family::BDAPrime, n, 0, p, opt);
}
SimplicialComplex build_tits(std::size_t n, std::uint32_t p, const BuildOptions& opt) {
  return build_flag_complex(Family::Tits, n, p, opt);
}
SimplicialComplex build_tits_oriented(std::size_t n, std::uint32_t p, const BuildOptions& opt) {
  return build_flag_complex(Family::TitsOriented, n, p, opt);
}

SimplicialComplex build(Family family, std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt) {
  switch (family) {
    case Family::BPm: return build_B_pm(n, m, p, opt);
    case Family::BProj: return build_B_proj(n, m, p, opt);
    case Family::BDPm: return build_BD_pm(n, m, p, opt);
    case Family::BAPm: return build_BA_pm(n, m, p, opt);
    case Family::BDAPm: return build_BDA_pm(n, m, p, opt);
    case Family::BDAPrime: return build_BDA_prime(n, p, opt);
    case Family::Tits: return build_tits(n, p, opt);
    case Family::TitsOriented: return build_tits_oriented(n, p, opt);
    case Family::Derived: break;
  }
  throw DomainError("derived complexes have no builder");
}

}  // namespace topcoh::complexes
