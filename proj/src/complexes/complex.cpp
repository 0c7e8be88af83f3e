#include "topcoh/complexes/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "topcoh/errors.hpp"

namespace topcoh::complexes {

std::string family_name(Family f) {
  switch (f) {
    case Family::BPm: return "b-pm";
    case Family::BProj: return "b-proj";
    case Family::BDPm: return "bd-pm";
    case Family::BAPm: return "ba-pm";
    case Family::BDAPm: return "bda-pm";
    case Family::BDAPrime: return "bda-prime";
    case Family::Tits: return "tits";
    case Family::TitsOriented: return "tits-oriented";
    case Family::Derived: return "derived";
  }
  return "derived";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::BPm, Family::BProj, Family::BDPm, Family::BAPm, Family::BDAPm, Family::BDAPrime,
                   Family::Tits, Family::TitsOriented}) {
    if (family_name(f) == name) return f;
  }
  throw DomainError("unknown complex family '" + name + "'");
}

std::string kind_name(SimplexKind k) {
  switch (k) {
    case SimplexKind::Standard: return "standard";
    case SimplexKind::InternallyAdditive: return "internal";
    case SimplexKind::ExternallyAdditive: return "external";
  }
  return "standard";
}

std::optional<AdditiveCore> SimplexLayer::core(std::size_t i) const {
  if (core_index_[i] < 0) return std::nullopt;
  return cores_[static_cast<std::size_t>(core_index_[i])];
}

void SimplexLayer::push(std::span<const VertexId> vs, SimplexKind kind, std::optional<AdditiveCore> core) {
  if (vs.size() != width()) throw MalformedComplexError("simplex width does not match layer dimension");
  flat_.insert(flat_.end(), vs.begin(), vs.end());
  kinds_.push_back(kind);
  if (core) {
    core_index_.push_back(static_cast<std::int32_t>(cores_.size()));
    cores_.push_back(*core);
  } else {
    core_index_.push_back(-1);
  }
}

std::optional<std::size_t> SimplexLayer::find(std::span<const VertexId> vs) const {
  if (vs.size() != width()) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto cur = vertices(mid);
    if (std::lexicographical_compare(cur.begin(), cur.end(), vs.begin(), vs.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::ranges::equal(vertices(lo), vs)) return lo;
  return std::nullopt;
}

void SimplexLayer::canonicalize() {
  const std::size_t count = size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto x = vertices(a), y = vertices(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  };
  if (!std::is_sorted(order.begin(), order.end(), less)) std::sort(order.begin(), order.end(), less);

  SimplexLayer out(dim_);
  out.flat_.reserve(flat_.size());
  for (std::size_t idx = 0; idx < count; ++idx) {
    const std::size_t i = order[idx];
    if (idx > 0 && std::ranges::equal(vertices(i), vertices(order[idx - 1]))) {
      const std::size_t j = order[idx - 1];
      if (kinds_[i] != kinds_[j] || core(i) != core(j))
        throw MalformedComplexError("one vertex set recorded with two classifications");
      continue;
    }
    out.push(vertices(i), kinds_[i], core(i));
  }
  *this = std::move(out);
}

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || d > dim()) return 0;
  return layers_[static_cast<std::size_t>(d)].size();
}

std::size_t SimplicialComplex::total_simplices() const {
  std::size_t total = 0;
  for (const auto& l : layers_) total += l.size();
  return total;
}

std::optional<VertexId> SimplicialComplex::find_vertex(const VertexLabel& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<VertexId>(it - labels_.begin());
}

Simplex SimplicialComplex::simplex(int d, std::size_t i) const {
  const auto& l = layer(d);
  auto vs = l.vertices(i);
  return Simplex{{vs.begin(), vs.end()}, l.kind(i), l.core(i)};
}

std::optional<std::pair<int, std::size_t>> SimplicialComplex::locate(std::span<const VertexId> vs) const {
  const int d = static_cast<int>(vs.size()) - 1;
  if (d < 0 || d > dim()) return std::nullopt;
  if (auto i = layers_[static_cast<std::size_t>(d)].find(vs)) return std::make_pair(d, *i);
  return std::nullopt;
}

bool SimplicialComplex::contains(std::span<const VertexId> vs) const {
  if (vs.empty()) return true;
  return locate(vs).has_value();
}

SimplexLayer& SimplicialComplex::mutable_layer(int d) {
  while (static_cast<int>(layers_.size()) <= d) layers_.emplace_back(static_cast<int>(layers_.size()));
  return layers_[static_cast<std::size_t>(d)];
}

void SimplicialComplex::trim_empty_layers() {
  while (!layers_.empty() && layers_.back().empty()) layers_.pop_back();
}

ComplexStats stats(const SimplicialComplex& k) {
  ComplexStats s;
  for (int d = 0; d <= k.dim(); ++d) {
    s.counts.push_back(k.count(d));
    s.euler += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(k.count(d));
  }
  // A simplex is a facet iff no simplex one dimension up contains it.
  for (int d = 0; d <= k.dim(); ++d) {
    std::vector<char> covered(k.count(d), 0);
    if (d < k.dim()) {
      const auto& up = k.layer(d + 1);
      std::vector<VertexId> face(static_cast<std::size_t>(d) + 1);
      for (std::size_t i = 0; i < up.size(); ++i) {
        auto vs = up.vertices(i);
        for (std::size_t drop = 0; drop < vs.size(); ++drop) {
          std::size_t w = 0;
          for (std::size_t j = 0; j < vs.size(); ++j)
            if (j != drop) face[w++] = vs[j];
          if (auto idx = k.layer(d).find(face)) covered[*idx] = 1;
        }
      }
    }
    s.facets += static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 0));
  }
  return s;
}

std::optional<std::string> check_face_closure(const SimplicialComplex& k) {
  for (int d = 1; d <= k.dim(); ++d) {
    const auto& l = k.layer(d);
    std::vector<VertexId> face(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < l.size(); ++i) {
      auto vs = l.vertices(i);
      auto core = l.core(i);
      for (std::size_t drop = 0; drop < vs.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < vs.size(); ++j)
          if (j != drop) face[w++] = vs[j];
        auto idx = k.layer(d - 1).find(face);
        if (!idx) return "missing face of a " + std::to_string(d) + "-simplex";
        const bool keeps_core = core && std::ranges::find(core->vertices(), vs[drop]) == core->vertices().end();
        const SimplexKind fk = k.layer(d - 1).kind(*idx);
        if (keeps_core) {
          if (fk != l.kind(i) || k.layer(d - 1).core(*idx) != core)
            return "face containing an additive core lost its classification";
        } else if (fk != SimplexKind::Standard) {
          return "face missing part of the core is not standard";
        }
      }
    }
  }
  return std::nullopt;
}

SimplicialComplex link(const SimplicialComplex& k, std::span<const VertexId> sigma_in) {
  std::vector<VertexId> sigma(sigma_in.begin(), sigma_in.end());
  std::sort(sigma.begin(), sigma.end());
  if (std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end() || !k.contains(sigma))
    throw NotASimplexError("link requested for a set that is not a simplex of the complex");

  SimplicialComplex out(Family::Derived, k.n(), k.m(), k.p());
  if (sigma.empty()) {
    out = k;
    return out;
  }

  // First pass: every simplex containing sigma contributes tau = simplex \ sigma.
  struct Entry {
    std::vector<VertexId> tau;  // old ids
    SimplexKind kind;
    std::optional<AdditiveCore> core;  // old ids
  };
  std::vector<Entry> entries;
  std::set<VertexId> link_vertices;
  const int s = static_cast<int>(sigma.size());
  for (int d = s; d <= k.dim(); ++d) {
    const auto& l = k.layer(d);
    for (std::size_t i = 0; i < l.size(); ++i) {
      auto vs = l.vertices(i);
      if (!std::includes(vs.begin(), vs.end(), sigma.begin(), sigma.end())) continue;
      Entry e;
      std::set_difference(vs.begin(), vs.end(), sigma.begin(), sigma.end(), std::back_inserter(e.tau));
      e.kind = SimplexKind::Standard;
      if (l.kind(i) != SimplexKind::Standard) {
        const AdditiveCore c = *l.core(i);
        if (c.size == 3 && c.external < 0) {
          std::vector<VertexId> inside, outside;
          for (VertexId v : c.vertices())
            (std::binary_search(sigma.begin(), sigma.end(), v) ? outside : inside).push_back(v);
          if (outside.empty()) {
            e.kind = SimplexKind::InternallyAdditive;
            e.core = c;
          } else if (outside.size() == 1) {
            e.kind = SimplexKind::ExternallyAdditive;
            AdditiveCore ec;
            ec.ids = {inside[0], inside[1], 0};
            ec.size = 2;
            ec.external = static_cast<std::int32_t>(std::lower_bound(sigma.begin(), sigma.end(), outside[0]) - sigma.begin());
            e.core = ec;
          }
          // Two or more core vertices inside sigma: tau is standard relative to sigma.
        } else if (l.kind(i) == SimplexKind::ExternallyAdditive) {
          // Already externally additive in K; it stays so if both core vertices survive.
          bool survives = std::ranges::none_of(c.vertices(), [&](VertexId v) {
            return std::binary_search(sigma.begin(), sigma.end(), v);
          });
          if (survives) {
            e.kind = SimplexKind::ExternallyAdditive;
            e.core = c;
          }
        }
      }
      for (VertexId v : e.tau) link_vertices.insert(v);
      entries.push_back(std::move(e));
    }
  }

  std::vector<VertexId> old_ids(link_vertices.begin(), link_vertices.end());
  std::vector<VertexLabel> labels;
  for (VertexId v : old_ids) labels.push_back(k.label(v));
  out.set_labels(std::move(labels));
  auto renumber = [&](VertexId v) {
    return static_cast<VertexId>(std::lower_bound(old_ids.begin(), old_ids.end(), v) - old_ids.begin());
  };
  for (auto& e : entries) {
    std::vector<VertexId> tau;
    for (VertexId v : e.tau) tau.push_back(renumber(v));
    std::optional<AdditiveCore> core;
    if (e.core) {
      core = *e.core;
      for (std::uint8_t j = 0; j < core->size; ++j) core->ids[j] = renumber(core->ids[j]);
      std::sort(core->ids.begin(), core->ids.begin() + core->size);
    }
    out.mutable_layer(static_cast<int>(tau.size()) - 1).push(tau, e.kind, core);
  }
  for (int d = 0; d <= out.dim(); ++d) out.mutable_layer(d).canonicalize();
  out.trim_empty_layers();
  return out;
}

SimplicialComplex from_facets(std::vector<std::vector<VertexId>> facets, std::size_t vertex_count) {
  SimplicialComplex out(Family::Derived, 0, 0, 0);
  std::vector<VertexLabel> labels;
  for (std::size_t v = 0; v < vertex_count; ++v) labels.push_back({static_cast<std::uint32_t>(v)});
  out.set_labels(std::move(labels));
  std::set<std::vector<VertexId>> all;
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    const std::size_t w = f.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << w); ++mask) {
      std::vector<VertexId> face;
      for (std::size_t j = 0; j < w; ++j)
        if (mask >> j & 1) face.push_back(f[j]);
      all.insert(std::move(face));
    }
  }
  for (const auto& f : all) out.mutable_layer(static_cast<int>(f.size()) - 1).push(f, SimplexKind::Standard);
  for (int d = 0; d <= out.dim(); ++d) out.mutable_layer(d).canonicalize();
  return out;
}

}  // namespace topcoh::complexes
