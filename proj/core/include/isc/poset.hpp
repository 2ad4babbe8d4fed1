#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace isc {

struct Cell {
  std::string id;
  int dim = 0;
  int stratum = 0;
};

struct Stratum {
  std::string name;
  int codim = 0;
};

// codimension-one face relation: coface > face with sign +-1
struct Incidence {
  int coface = 0;
  int face = 0;
  int sign = 1;
};

struct RawCell {
  std::string id;
  int dim = 0;
  std::string stratum;
};

struct RawIncidence {
  std::string coface, face;
  int sign = 1;
};

class StratifiedPoset;
StratifiedPoset from_simplicial(const std::vector<std::vector<int>>& facets,
                                const std::map<int, std::string>& labels);
StratifiedPoset assign_strata(const StratifiedPoset& p, const std::map<std::string, std::string>& assignment,
                              const std::map<std::string, int>& codims);

// Face poset of a regular cell complex with a stratification by codimension.
// Cells are indexed by (dimension, identifier), so index order is a linear
// extension of the face order.
class StratifiedPoset {
 public:
  static StratifiedPoset build(std::vector<RawCell> cells, const std::vector<RawIncidence>& incidence,
                               const std::vector<Stratum>& strata);

  int size() const { return static_cast<int>(cells_.size()); }
  int dim() const { return dim_; }
  const Cell& cell(int c) const { return cells_[c]; }
  const std::vector<Cell>& cells() const { return cells_; }
  int index(const std::string& id) const;
  bool has(const std::string& id) const { return index_.count(id) > 0; }

  const std::vector<Incidence>& edges() const { return edges_; }
  const std::vector<int>& up_edges(int c) const { return up_[c]; }      // edges with c as face
  const std::vector<int>& down_edges(int c) const { return down_[c]; }  // edges with c as coface

  bool leq(int a, int b) const { return (above_[a][b >> 6] >> (b & 63)) & 1U; }
  std::vector<int> above(int c, bool strict) const;
  std::vector<int> below(int c, bool strict) const;

  const std::vector<Stratum>& strata() const { return strata_; }
  int codim(int c) const { return strata_[cells_[c].stratum].codim; }
  std::vector<int> singular_codims() const;  // ascending, nonempty only

  std::vector<RawCell> raw_cells() const;
  std::vector<RawIncidence> raw_incidence() const;

  // simplicial structure, present when built by from_simplicial
  bool is_simplicial() const { return !verts_.empty(); }
  const std::vector<int>& vertices(int c) const { return verts_[c]; }
  const std::map<int, std::string>& vertex_labels() const { return labels_; }
  std::vector<std::vector<int>> facets() const;

 private:
  friend StratifiedPoset from_simplicial(const std::vector<std::vector<int>>&, const std::map<int, std::string>&);
  friend StratifiedPoset assign_strata(const StratifiedPoset&, const std::map<std::string, std::string>&,
                                       const std::map<std::string, int>&);

  std::vector<std::vector<int>> verts_;
  std::map<int, std::string> labels_;
  std::vector<Cell> cells_;
  std::unordered_map<std::string, int> index_;
  std::vector<Incidence> edges_;
  std::vector<std::vector<int>> up_, down_;
  std::vector<std::vector<std::uint64_t>> above_;
  std::vector<Stratum> strata_;
  int dim_ = -1;
};

using PosetPtr = std::shared_ptr<const StratifiedPoset>;

enum class SelKind { Open, Closed, Stratum, Any };

// Subset of cells of a poset; the kind records which closure property was
// validated.
struct Selection {
  PosetPtr parent;
  std::vector<int> cells;  // ascending
  std::vector<char> mask;
  SelKind kind = SelKind::Any;

  bool contains(int c) const { return mask[c] != 0; }
  int size() const { return static_cast<int>(cells.size()); }
  bool is_up_closed() const;
  bool is_down_closed() const;
};

Selection make_selection(PosetPtr p, std::vector<int> cells, SelKind kind);
Selection full_selection(PosetPtr p);

// Vertices are ordered by integer value; cell ids join the vertex labels
// (default: the integer itself) with commas.
inline StratifiedPoset from_simplicial(const std::vector<std::vector<int>>& facets) {
  return from_simplicial(facets, {});
}

// Reassign strata: stratum name per cell id plus codimension per stratum.
StratifiedPoset assign_strata(const StratifiedPoset& p, const std::map<std::string, std::string>& assignment,
                              const std::map<std::string, int>& codims);

// U_k: cells in strata of codimension < k
Selection open_complement(PosetPtr p, int k);
// cells whose stratum has codimension exactly k
Selection stratum_selection(PosetPtr p, int k);
// {tau in within : tau >= sigma}
std::vector<int> star_subposet(const StratifiedPoset& p, int sigma, const Selection& within);

// simplicial facets from a whitespace-separated text file, '#' comments
std::vector<std::vector<int>> read_facets(const std::string& path);

}  // namespace isc
