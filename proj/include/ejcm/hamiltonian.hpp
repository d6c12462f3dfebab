#pragma once

#include <vector>

#include "ejcm/model.hpp"
#include "ejcm/pauli.hpp"

namespace ejcm {

// Structural labels of an interaction term Q (x) atom, attached at construction time.
struct TermTag {
  int mode = 0;        // 1-based
  int hamming = 0;     // number of X/Y positions in the photon string
  int y_parity = 0;    // parity of Y count in the photon string
  char atom = 'X';     // 'X' or 'Y'
};

struct TaggedSum {
  PauliSum sum;
  std::vector<TermTag> tags;  // aligned with sum.terms()
};

struct HamiltonianParts {
  PauliSum h_photon;  // Z-type, no identity
  PauliSum h_atom;
  TaggedSum h_int;
  double identity_shift = 0.0;
};

HamiltonianParts build_schrodinger(const ModelParams& params);
TaggedSum build_interaction(const ModelParams& params, double t);

// h_photon + h_atom (+ identity shift when requested)
PauliSum free_part(const HamiltonianParts& parts, bool with_identity = false);
PauliSum total(const HamiltonianParts& parts, bool with_identity = true);

struct TermCounts {
  long long N_Z = 0;
  long long N_P = 0;
  long long M = 0;
  long long N_I_t0 = 0;
  long long N_I_t = 0;
};

TermCounts term_counts(const ModelParams& params);

}  // namespace ejcm
