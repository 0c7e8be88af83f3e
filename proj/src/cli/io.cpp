#include "topcoh/cli/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "topcoh/errors.hpp"

namespace topcoh::cli {

using complexes::AdditiveCore;
using complexes::Family;
using complexes::SimplexKind;
using complexes::SimplicialComplex;
using complexes::VertexId;

namespace {

Family parse_family(const std::string& name) {
  if (name == "derived") return Family::Derived;
  try {
    return complexes::family_from_name(name);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

SimplexKind parse_kind(const std::string& name) {
  for (SimplexKind k : {SimplexKind::Standard, SimplexKind::InternallyAdditive, SimplexKind::ExternallyAdditive})
    if (complexes::kind_name(k) == name) return k;
  throw ParseError("unknown simplex kind '" + name + "'");
}

std::string next_line(std::istream& in, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("unexpected end of complex file after line " + std::to_string(line_no));
  ++line_no;
  return line;
}

std::size_t section_count(const std::string& line, const std::string& name, std::size_t line_no) {
  std::istringstream ss(line);
  std::string word;
  std::size_t count = 0;
  if (!(ss >> word >> count) || word != name)
    throw ParseError("line " + std::to_string(line_no) + ": expected '" + name + " <count>'");
  return count;
}

formulas::SequenceKind parse_sequence_kind(const std::string& s) {
  using formulas::SequenceKind;
  for (SequenceKind k : {SequenceKind::T, SequenceKind::TPrime, SequenceKind::LowerBound, SequenceKind::Steinberg})
    if (formulas::to_string(k) == s) return k;
  throw ParseError("unknown sequence kind '" + s + "'");
}

nlohmann::json optional_divisors(const std::optional<std::vector<mpz_class>>& t) {
  if (!t) return nullptr;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : *t) arr.push_back(d.get_str());
  return arr;
}

}  // namespace

std::string join(const std::vector<mpz_class>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i].get_str();
  }
  return out;
}

void write_complex(std::ostream& out, const SimplicialComplex& k) {
  out << complexes::family_name(k.family()) << ' ' << k.n() << ' ' << k.m() << ' ' << k.p() << '\n';
  out << "vertices " << k.vertex_count() << '\n';
  for (VertexId v = 0; v < k.vertex_count(); ++v) {
    out << v;
    for (auto x : k.label(v)) out << ' ' << x;
    out << '\n';
  }
  out << "simplices " << k.total_simplices() << '\n';
  for (int d = 0; d <= k.dim(); ++d) {
    const auto& layer = k.layer(d);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      out << d << ' ' << complexes::kind_name(layer.kind(i));
      for (VertexId v : layer.vertices(i)) out << ' ' << v;
      if (auto core = layer.core(i)) {
        out << " |";
        for (VertexId v : core->vertices()) out << ' ' << v;
        if (core->external >= 0) out << " e" << core->external + 1;
      }
      out << '\n';
    }
  }
}

SimplicialComplex read_complex(std::istream& in) {
  std::size_t line_no = 0;
  std::istringstream header(next_line(in, line_no));
  std::string family;
  std::size_t n = 0, m = 0;
  std::uint32_t p = 0;
  if (!(header >> family >> n >> m >> p)) throw ParseError("line 1: expected '<family> <n> <m> <p>'");
  SimplicialComplex k(parse_family(family), n, m, p);

  const std::size_t vertex_count = section_count(next_line(in, line_no), "vertices", line_no);
  std::vector<complexes::VertexLabel> labels;
  for (std::size_t v = 0; v < vertex_count; ++v) {
    std::istringstream ss(next_line(in, line_no));
    std::size_t id = 0;
    if (!(ss >> id) || id != v) throw ParseError("line " + std::to_string(line_no) + ": vertex ids must be 0, 1, 2, ...");
    complexes::VertexLabel label;
    std::uint32_t x = 0;
    while (ss >> x) label.push_back(x);
    labels.push_back(std::move(label));
  }
  k.set_labels(std::move(labels));

  const std::size_t simplex_count = section_count(next_line(in, line_no), "simplices", line_no);
  for (std::size_t s = 0; s < simplex_count; ++s) {
    std::istringstream ss(next_line(in, line_no));
    const std::string where = "line " + std::to_string(line_no) + ": ";
    int dim = 0;
    std::string kind_word;
    if (!(ss >> dim >> kind_word) || dim < 0) throw ParseError(where + "expected '<dim> <kind> <ids>'");
    const SimplexKind kind = parse_kind(kind_word);
    std::vector<VertexId> vs;
    std::string tok;
    bool in_core = false;
    AdditiveCore core;
    while (ss >> tok) {
      if (tok == "|") {
        in_core = true;
        continue;
      }
      if (in_core && tok.front() == 'e') {
        core.external = std::stoi(tok.substr(1)) - 1;
        continue;
      }
      VertexId v = 0;
      try {
        v = static_cast<VertexId>(std::stoul(tok));
      } catch (const std::exception&) {
        throw ParseError(where + "bad token '" + tok + "'");
      }
      if (v >= vertex_count) throw ParseError(where + "vertex id out of range");
      if (in_core) {
        if (core.size == 3) throw ParseError(where + "core has more than three vertices");
        core.ids[core.size++] = v;
      } else {
        vs.push_back(v);
      }
    }
    if (vs.size() != static_cast<std::size_t>(dim) + 1) throw ParseError(where + "vertex count does not match dimension");
    if (!std::is_sorted(vs.begin(), vs.end()) || std::adjacent_find(vs.begin(), vs.end()) != vs.end())
      throw ParseError(where + "vertex ids must be strictly increasing");
    if ((kind == SimplexKind::Standard) != !in_core) throw ParseError(where + "core present iff the simplex is additive");
    std::optional<AdditiveCore> c;
    if (in_core) c = core;
    k.mutable_layer(dim).push(vs, kind, c);
  }
  for (int d = 0; d <= k.dim(); ++d) k.mutable_layer(d).canonicalize();
  k.trim_empty_layers();
  return k;
}

void write_sequence_csv(std::ostream& out, const formulas::RankSequence& s) {
  out << "n,value\n";
  for (std::size_t n = 0; n < s.values.size(); ++n) out << n << ',' << s.values[n].get_str() << '\n';
}

nlohmann::json sequence_json(const formulas::RankSequence& s) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : s.values) values.push_back(v.get_str());
  return {{"p", s.p}, {"kind", formulas::to_string(s.kind)}, {"values", values}};
}

formulas::RankSequence sequence_from_json(const nlohmann::json& j) {
  formulas::RankSequence s;
  try {
    s.p = j.at("p").get<std::uint32_t>();
    s.kind = parse_sequence_kind(j.at("kind").get<std::string>());
    for (const auto& v : j.at("values")) s.values.emplace_back(v.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed sequence document: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed sequence document: non-integer value");
  }
  return s;
}

nlohmann::json stats_json(const complexes::ComplexStats& s) {
  return {{"counts", s.counts}, {"facets", s.facets}, {"euler", s.euler}};
}

nlohmann::json homology_json(const homology::HomologyReport& r) {
  nlohmann::json degrees = nlohmann::json::array();
  for (int d = r.min_degree; d <= r.max_degree(); ++d) {
    const auto i = static_cast<std::size_t>(d - r.min_degree);
    degrees.push_back({{"degree", d}, {"betti", r.betti[i].get_str()}, {"torsion", optional_divisors(r.torsion[i])}});
  }
  return {{"reduced", r.reduced}, {"degrees", degrees},       {"euler", r.euler.get_str()},
          {"method", r.method},   {"rank_only", r.rank_only}, {"seed", r.seed}};
}

}  // namespace topcoh::cli
