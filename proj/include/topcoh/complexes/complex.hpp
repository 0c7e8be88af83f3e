#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace topcoh::complexes {

using VertexId = std::uint32_t;

enum class Family {
  BPm,           // partial +-bases, B^+-_{n,m}
  BProj,         // partial F^x-bases, B^x_{n,m}
  BDPm,          // determinant-1 partial +-bases
  BAPm,          // augmented partial +-bases (unit coefficients)
  BDAPm,         // augmented determinant-1 partial +-bases (+-1 coefficients)
  BDAPrime,      // subcomplex of BDA^+-_n with proper span
  Tits,          // order complex of proper nonzero subspaces
  TitsOriented,  // same with a +-orientation on every subspace
  Derived,       // links and hand-built complexes
};

/// CLI spelling: b-pm, b-proj, bd-pm, ba-pm, bda-pm, bda-prime, tits, tits-oriented.
std::string family_name(Family f);
/// Throws DomainError for an unknown name.
Family family_from_name(const std::string& name);

enum class SimplexKind : std::uint8_t { Standard, InternallyAdditive, ExternallyAdditive };

std::string kind_name(SimplexKind k);

/// Additive core of an augmented simplex. Internally additive: three vertex ids.
/// Externally additive: two vertex ids plus the index of the link-basis vector
/// (e_{external+1}, or the position inside the linked simplex) that completes the relation.
struct AdditiveCore {
  std::array<VertexId, 3> ids{};
  std::uint8_t size = 0;
  std::int32_t external = -1;

  std::span<const VertexId> vertices() const { return {ids.data(), size}; }
  friend bool operator==(const AdditiveCore&, const AdditiveCore&) = default;
};

/// Materialized simplex: strictly increasing vertex ids plus classification.
struct Simplex {
  std::vector<VertexId> vertices;
  SimplexKind kind = SimplexKind::Standard;
  std::optional<AdditiveCore> core;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// All simplices of one dimension, stored flat and sorted lexicographically.
class SimplexLayer {
 public:
  explicit SimplexLayer(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t width() const { return static_cast<std::size_t>(dim_) + 1; }
  std::size_t size() const { return kinds_.size(); }
  bool empty() const { return kinds_.empty(); }

  std::span<const VertexId> vertices(std::size_t i) const { return {flat_.data() + i * width(), width()}; }
  SimplexKind kind(std::size_t i) const { return kinds_[i]; }
  std::optional<AdditiveCore> core(std::size_t i) const;

  /// Index of the simplex with exactly these (sorted) vertices, if present.
  std::optional<std::size_t> find(std::span<const VertexId> vs) const;

  void push(std::span<const VertexId> vs, SimplexKind kind, std::optional<AdditiveCore> core = std::nullopt);
  /// Sorts lexicographically and drops exact duplicates. Duplicates must agree on kind and core.
  void canonicalize();

  const std::vector<VertexId>& flat() const { return flat_; }

 private:
  int dim_;
  std::vector<VertexId> flat_;
  std::vector<SimplexKind> kinds_;
  std::vector<std::int32_t> core_index_;
  std::vector<AdditiveCore> cores_;
};

/// Label of a vertex: the coordinates of a canonical vector, or for subspace
/// vertices the tuple (dim, orientation, echelon entries row by row) with
/// orientation 0 when the family carries none.
using VertexLabel = std::vector<std::uint32_t>;

/// A finite simplicial complex with labeled vertices and simplices stored in
/// every dimension. The empty complex has no layers.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(Family family, std::size_t n, std::size_t m, std::uint32_t p)
      : family_(family), n_(n), m_(m), p_(p) {}

  Family family() const { return family_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::uint32_t p() const { return p_; }

  /// -1 for the empty complex.
  int dim() const { return static_cast<int>(layers_.size()) - 1; }
  const SimplexLayer& layer(int d) const { return layers_.at(static_cast<std::size_t>(d)); }
  std::size_t count(int d) const;
  std::size_t total_simplices() const;

  std::size_t vertex_count() const { return labels_.size(); }
  const VertexLabel& label(VertexId v) const { return labels_.at(v); }
  const std::vector<VertexLabel>& labels() const { return labels_; }
  std::optional<VertexId> find_vertex(const VertexLabel& label) const;

  Simplex simplex(int d, std::size_t i) const;
  bool contains(std::span<const VertexId> sorted_vertices) const;
  std::optional<std::pair<int, std::size_t>> locate(std::span<const VertexId> sorted_vertices) const;

  // Builders use these; callers normally receive finished, immutable complexes.
  void set_labels(std::vector<VertexLabel> labels) { labels_ = std::move(labels); }
  SimplexLayer& mutable_layer(int d);
  void trim_empty_layers();

 private:
  Family family_ = Family::Derived;
  std::size_t n_ = 0, m_ = 0;
  std::uint32_t p_ = 0;
  std::vector<VertexLabel> labels_;
  std::vector<SimplexLayer> layers_;
};

struct ComplexStats {
  std::vector<std::size_t> counts;  // by dimension
  std::size_t facets = 0;
  std::int64_t euler = 0;
};

ComplexStats stats(const SimplicialComplex& k);

/// Vertices of every face of every simplex are stored with the right kind:
/// a face keeping the whole additive core is additive with the same core,
/// otherwise standard. Returns a description of the first violation, if any.
std::optional<std::string> check_face_closure(const SimplicialComplex& k);

/// Full link of sigma in K, with simplices reclassified relative to sigma:
/// tau is internally additive if it is additive in K, externally additive if
/// sigma u tau has a core meeting sigma, standard otherwise. Vertex labels are
/// inherited from K. Throws NotASimplexError if sigma is not in K.
SimplicialComplex link(const SimplicialComplex& k, std::span<const VertexId> sigma);

/// Complex generated by the given maximal simplices (all faces added as standard).
SimplicialComplex from_facets(std::vector<std::vector<VertexId>> facets, std::size_t vertex_count);

}  // namespace topcoh::complexes
