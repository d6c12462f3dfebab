#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ejcm/model.hpp"

namespace ejcm {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kCoeffDropTol = 1e-12;

// Label position q is qubit q. In dense matrices qubit 0 is the most significant bit
// of the basis index, i.e. dense(P) = kron(P[0], P[1], ..., P[N-1]).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);
  static PauliString from_label(std::string_view label);
  static PauliString single(int n_qubits, int qubit, char op);

  int size() const { return n_; }
  char at(int q) const;
  void set(int q, char op);
  std::uint64_t xbits() const { return x_; }
  std::uint64_t zbits() const { return z_; }
  int weight() const;
  int y_count() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  bool is_diagonal() const { return x_ == 0; }
  std::vector<int> support() const;
  std::string label() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  friend bool operator!=(const PauliString& a, const PauliString& b) { return !(a == b); }
  // lexicographic on labels with I < X < Y < Z
  friend bool operator<(const PauliString& a, const PauliString& b);

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

bool commutes(const PauliString& p, const PauliString& q);
// p*q = phase * r
std::pair<cplx, PauliString> multiply(const PauliString& p, const PauliString& q);
PauliString tensor(const PauliString& a, const PauliString& b);

struct PauliTerm {
  cplx coeff;
  PauliString string;
};

class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}
  PauliSum(int n_qubits, std::vector<PauliTerm> terms);

  static PauliSum identity(int n_qubits, cplx c = 1.0);
  static PauliSum from_label(std::string_view label, cplx c = 1.0);

  int n_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const PauliTerm& operator[](std::size_t i) const { return terms_[i]; }

  cplx coefficient(const PauliString& p) const;
  cplx identity_coeff() const;
  PauliSum without_identity() const;
  // transpose flips the sign of every term with an odd number of Y
  PauliSum transpose() const;
  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  double max_abs_coeff() const;
  std::size_t non_identity_count() const;

  PauliSum operator+(const PauliSum& o) const;
  PauliSum operator-(const PauliSum& o) const;
  PauliSum operator*(const PauliSum& o) const;
  PauliSum operator*(cplx s) const;

  std::string to_text() const;
  static PauliSum from_text(std::string_view text);
  std::string to_json() const;
  static PauliSum from_json(std::string_view text);

 private:
  void canonicalize();

  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

enum class LadderKind { annihilate, create };

PauliSum number_operator(int k);
PauliSum number_squared_operator(int k);
PauliSum ladder_operator(int k, LadderKind kind);
// |row><col| on k qubits, bits read most significant first
PauliSum outer_product(int k, std::uint64_t row, std::uint64_t col);

PauliString embed_at(const PauliString& local, int offset, int n_total);
PauliSum embed_at(const PauliSum& local, int offset, int n_total);
// mode is 1-based
PauliSum embed(const PauliSum& local, int mode, const ModelParams& params);

int dense_limit();
void set_dense_limit(int n_qubits);

struct DenseAction {
  std::uint64_t flip = 0;
  std::uint64_t sign = 0;
  cplx base = 1.0;
};
// P|c> = base * (-1)^popcount(c & sign) |c ^ flip>
DenseAction dense_action(const PauliString& p);

DenseOperator to_dense(const PauliString& p);
DenseOperator to_dense(const PauliSum& s);
PauliSum project_to_pauli(const DenseOperator& op);

StateVector apply(const PauliSum& s, const StateVector& psi);
cplx expectation(const PauliSum& s, const StateVector& psi);

}  // namespace ejcm
