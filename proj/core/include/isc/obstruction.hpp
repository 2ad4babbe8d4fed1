#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "isc/sheaf.hpp"

namespace isc {

using Bidegree = std::pair<int, int>;  // (p, q)

// One page of the local-to-global spectral sequence. differentials[(p,q)] is
// d_r: E_r^{p,q} -> E_r^{p+r,q-r+1} in the bases chosen for this page; it is
// only stored when both ends are nonzero.
struct SpectralPage {
  int r = 2;
  std::map<Bidegree, int> entries;  // zeros omitted
  std::map<Bidegree, RatMatrix> differentials;

  int entry(int p, int q) const;
  int total() const;
  bool degenerate() const;  // every d_r is zero
};

// Spectral sequence of the double complex of cellular cochains with
// coefficients in K, filtered by cell dimension (chains of cells on bases
// that are not closed).
class SpectralSequence {
 public:
  explicit SpectralSequence(const SheafComplex& k);

  SpectralPage page(int r) const;
  // first page whose total dimension equals that of E_infinity
  int stable_page() const { return stable_; }
  // d_r vanishes for r > bound() for filtration reasons
  int bound() const { return bound_; }
  // dimensions of E_infinity summed along p + q = n
  const GradedDims& abutment() const { return abutment_; }

 private:
  RatMatrix z_basis(int r, int p, int n) const;
  RatMatrix boundary_basis(int r, int p, int n) const;
  struct Quotient {
    RatMatrix denominator;  // column basis
    RatMatrix reps;         // representatives completing it to Z_r
  };
  Quotient quotient(int r, int p, int n) const;
  std::vector<int> columns_from(int p, int n) const;
  std::vector<int> rows_below(int p, int n) const;

  std::map<int, std::vector<int>> filt_;  // degree -> filtration per basis vector
  std::map<int, RatMatrix> d_;            // degree n -> D: C^n -> C^{n+1}
  int pmin_ = 0, pmax_ = 0;
  int stable_ = 2, bound_ = 2;
  GradedDims abutment_;
};

// pages 2..r_max
std::vector<SpectralPage> ss_pages(const SheafComplex& k, int r_max);

struct ObstructionWitness {
  int r = 0, p = 0, q = 0;
  int rank = 0;
};

enum class ScanVerdict { Clear, Obstructed };

struct ObstructionReport {
  ScanVerdict verdict = ScanVerdict::Clear;
  std::vector<ObstructionWitness> witnesses;
  int last_page = 2;  // scanning stopped here
};

// Nonzero d_r^{p,q} with qbar < q <= qbar + r - 1 rule out a splitting of the
// truncation triangle at qbar.
ObstructionReport obstruction_scan(const SheafComplex& k, int qbar);

std::string to_string(ScanVerdict v);

}  // namespace isc
