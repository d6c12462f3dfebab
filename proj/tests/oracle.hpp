#pragma once

// Direct matrix constructions used as independent references. Nothing here goes
// through Pauli strings.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>
#include <vector>

#include "ejcm/model.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline Mat eye(Eigen::Index d) { return Mat::Identity(d, d); }

// a|b> = sqrt(b)|b-1>
inline Mat annihilation(int k) {
  const Eigen::Index d = Eigen::Index{1} << k;
  Mat a = Mat::Zero(d, d);
  for (Eigen::Index b = 1; b < d; ++b) a(b - 1, b) = std::sqrt(static_cast<double>(b));
  return a;
}

inline Mat number(int k) {
  const Eigen::Index d = Eigen::Index{1} << k;
  Mat n = Mat::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) n(b, b) = static_cast<double>(b);
  return n;
}

// mode m (0-based) operator placed among the photon registers, atom last
inline Mat on_mode(const Mat& local, int m, const ejcm::ModelParams& p) {
  const Eigen::Index dk = Eigen::Index{1} << p.trunc_bits;
  Mat out = Mat::Identity(1, 1);
  for (int j = 0; j < p.n_modes; ++j) out = kron(out, j == m ? local : eye(dk));
  return kron(out, eye(2));
}

inline Mat on_atom(const Mat& local, const ejcm::ModelParams& p) {
  const Eigen::Index dp = Eigen::Index{1} << (p.n_modes * p.trunc_bits);
  return kron(eye(dp), local);
}

// atom basis: |0> excited, sigma+ = |0><1|
inline Mat sigma_plus() {
  Mat s = Mat::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

inline Mat pauli_z() {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

inline Mat free_hamiltonian(const ejcm::ModelParams& p) {
  Mat h = on_atom(0.5 * p.atom_freq * pauli_z(), p);
  for (int m = 0; m < p.n_modes; ++m) h += p.mode_freqs[m] * on_mode(number(p.trunc_bits), m, p);
  return h;
}

inline Mat coupling(const ejcm::ModelParams& p) {
  const Eigen::Index d = Eigen::Index{1} << p.n_qubits();
  Mat h = Mat::Zero(d, d);
  Mat sp = on_atom(sigma_plus(), p);
  for (int m = 0; m < p.n_modes; ++m) {
    Mat a = on_mode(annihilation(p.trunc_bits), m, p);
    Mat term = a * sp;
    h += p.couplings[m] * (term + term.adjoint());
  }
  return h;
}

inline Mat hamiltonian(const ejcm::ModelParams& p) { return free_hamiltonian(p) + coupling(p); }

// exp(i H0 t) H1 exp(-i H0 t) with H0 diagonal
inline Mat interaction(const ejcm::ModelParams& p, double t) {
  Mat h0 = free_hamiltonian(p);
  Mat h1 = coupling(p);
  Mat out = h1;
  for (Eigen::Index i = 0; i < h1.rows(); ++i)
    for (Eigen::Index j = 0; j < h1.cols(); ++j)
      out(i, j) = std::exp(cplx(0.0, (h0(i, i).real() - h0(j, j).real()) * t)) * h1(i, j);
  return out;
}

// vec is row-stacked, so vec(H rho - rho H) = (H (x) I - I (x) H^T) vec(rho)
inline Mat liouvillian(const Mat& h) {
  return kron(h, eye(h.rows())) - kron(eye(h.rows()), h.transpose());
}

// exp(-i H t) by Taylor series with scaling and squaring
inline Mat expm_minus_i(const Mat& h, double t) {
  Mat a = h * cplx(0.0, -t);
  double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (nrm > 0.25) {
    nrm /= 2;
    ++s;
  }
  a /= std::ldexp(1.0, s);
  Mat out = eye(h.rows()), term = eye(h.rows());
  for (int i = 1; i < 30; ++i) {
    term = term * a / static_cast<double>(i);
    out += term;
  }
  for (int i = 0; i < s; ++i) out = out * out;
  return out;
}

inline Mat random_density(int n, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  std::normal_distribution<double> g;
  Mat a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

inline Eigen::VectorXcd random_state(int n, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(g(rng), g(rng));
  return v.normalized();
}

inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

inline ejcm::ModelParams params(int nf, int k, std::vector<double> freqs = {}, double atom = 1.0,
                                std::vector<double> g = {}) {
  ejcm::ModelParams p;
  p.n_modes = nf;
  p.trunc_bits = k;
  p.atom_freq = atom;
  p.mode_freqs = freqs.empty() ? std::vector<double>(nf, 1.0) : freqs;
  p.couplings = g.empty() ? std::vector<double>(nf, 1.0) : g;
  return ejcm::validate(p);
}

}  // namespace oracle
