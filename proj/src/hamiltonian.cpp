#include "ejcm/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ejcm {

namespace {

struct Tagged {
  PauliTerm term;
  TermTag tag;
};

TaggedSum finish(int n, std::vector<Tagged> items) {
  std::erase_if(items, [](const Tagged& t) { return std::abs(t.term.coeff) < kCoeffDropTol; });
  std::stable_sort(items.begin(), items.end(),
                   [](const Tagged& a, const Tagged& b) { return a.term.string < b.term.string; });
  std::vector<PauliTerm> terms;
  std::vector<TermTag> tags;
  for (const auto& it : items) {
    terms.push_back(it.term);
    tags.push_back(it.tag);
  }
  TaggedSum out{PauliSum(n, std::move(terms)), std::move(tags)};
  if (out.sum.size() != out.tags.size()) throw std::logic_error("interaction term strings collided");
  return out;
}

// phase(m) multiplies the annihilation coefficient of mode m
template <class Phase>
TaggedSum assemble(const ModelParams& params, Phase phase) {
  const int k = params.trunc_bits;
  const int n = params.n_qubits();
  const auto ladder = ladder_operator(k, LadderKind::annihilate);
  std::vector<Tagged> items;
  items.reserve(2 * params.n_modes * ladder.size());
  for (int m = 1; m <= params.n_modes; ++m) {
    const double g = params.couplings[m - 1];
    const cplx ph = phase(m - 1);
    for (const auto& t : ladder.terms()) {
      TermTag tag;
      tag.mode = m;
      tag.hamming = std::popcount(t.string.xbits());
      tag.y_parity = t.string.y_count() % 2;
      auto q = embed_at(t.string, (m - 1) * k, n);
      // conj(b) sigma^- + b sigma^+ = Re(b) X - Im(b) Y
      cplx b = t.coeff * ph;
      auto qx = q, qy = q;
      qx.set(n - 1, 'X');
      qy.set(n - 1, 'Y');
      tag.atom = 'X';
      items.push_back({{g * b.real(), qx}, tag});
      tag.atom = 'Y';
      items.push_back({{-g * b.imag(), qy}, tag});
    }
  }
  return finish(n, std::move(items));
}

}  // namespace

HamiltonianParts build_schrodinger(const ModelParams& params) {
  const int k = params.trunc_bits;
  const int n = params.n_qubits();
  HamiltonianParts parts;
  std::vector<PauliTerm> photon;
  const double cutoff = params.cutoff();
  for (int m = 0; m < params.n_modes; ++m) {
    const double w = params.mode_freqs[m];
    parts.identity_shift += w * cutoff / 2.0;
    for (int j = 0; j < k; ++j) {
      photon.push_back({-w * std::ldexp(1.0, k - j - 1) / 2.0, PauliString::single(n, m * k + j, 'Z')});
    }
  }
  parts.h_photon = PauliSum(n, std::move(photon));
  parts.h_atom = PauliSum(n, {{params.atom_freq / 2.0, PauliString::single(n, n - 1, 'Z')}});
  parts.h_int = assemble(params, [](int) { return cplx(1.0); });
  return parts;
}

TaggedSum build_interaction(const ModelParams& params, double t) {
  return assemble(params, [&](int m) {
    if (t == 0.0 || is_resonant(params, m)) return cplx(1.0);
    double delta = params.mode_freqs[m] - params.atom_freq;
    return std::polar(1.0, -delta * t);
  });
}

PauliSum free_part(const HamiltonianParts& parts, bool with_identity) {
  auto s = parts.h_photon + parts.h_atom;
  if (with_identity) s = s + PauliSum::identity(s.n_qubits(), parts.identity_shift);
  return s;
}

PauliSum total(const HamiltonianParts& parts, bool with_identity) {
  return free_part(parts, with_identity) + parts.h_int.sum;
}

TermCounts term_counts(const ModelParams& params) {
  const long long nf = params.n_modes, k = params.trunc_bits;
  const long long r = (1LL << k) * k;
  TermCounts c;
  c.N_Z = nf * k + 1;
  c.N_P = nf * r;
  c.M = c.N_Z + 1 + c.N_P;
  c.N_I_t0 = nf * r;
  c.N_I_t = (2 * nf - derive(params).M0) * r;
  return c;
}

}  // namespace ejcm
