#include "ejcm/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ejcm {

namespace {

int g_dense_limit = 14;

int code_of(char op) {
  switch (op) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
  }
  throw std::invalid_argument(std::string("bad Pauli symbol '") + op + "'");
}

constexpr char kSymbols[4] = {'I', 'X', 'Y', 'Z'};

const cplx kI(0.0, 1.0);

cplx ipow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return kI;
    case 2: return -1.0;
    default: return -kI;
  }
}

void check_dense(int n) {
  if (n > g_dense_limit) {
    throw std::length_error("dense oracle limited to " + std::to_string(g_dense_limit) + " qubits, got " +
                            std::to_string(n));
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 64) throw std::invalid_argument("PauliString supports 0..64 qubits");
}

PauliString PauliString::from_label(std::string_view label) {
  PauliString p(static_cast<int>(label.size()));
  for (int q = 0; q < p.n_; ++q) p.set(q, label[q]);
  return p;
}

PauliString PauliString::single(int n_qubits, int qubit, char op) {
  PauliString p(n_qubits);
  p.set(qubit, op);
  return p;
}

char PauliString::at(int q) const {
  bool x = (x_ >> q) & 1u;
  bool z = (z_ >> q) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set(int q, char op) {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  int c = code_of(op);
  std::uint64_t bit = std::uint64_t{1} << q;
  x_ &= ~bit;
  z_ &= ~bit;
  if (c == 1 || c == 2) x_ |= bit;
  if (c == 2 || c == 3) z_ |= bit;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }
int PauliString::y_count() const { return std::popcount(x_ & z_); }

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if (((x_ | z_) >> q) & 1u) out.push_back(q);
  return out;
}

std::string PauliString::label() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[q] = at(q);
  return s;
}

bool operator<(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return false;
  int q = std::countr_zero(diff);
  return code_of(a.at(q)) < code_of(b.at(q));
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) throw std::invalid_argument("commutes: length mismatch");
  std::uint64_t s = (p.xbits() & q.zbits()) ^ (p.zbits() & q.xbits());
  return std::popcount(s) % 2 == 0;
}

std::pair<cplx, PauliString> multiply(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) throw std::invalid_argument("multiply: length mismatch");
  // sigma(x,z) = i^{xz} X^x Z^z; Z^a X^b = (-1)^{ab} X^b Z^a
  int e = 0;
  e += std::popcount(p.xbits() & p.zbits());
  e += std::popcount(q.xbits() & q.zbits());
  e += 2 * std::popcount(p.zbits() & q.xbits());
  std::uint64_t x = p.xbits() ^ q.xbits();
  std::uint64_t z = p.zbits() ^ q.zbits();
  e -= std::popcount(x & z);
  PauliString r(p.size());
  for (int k = 0; k < p.size(); ++k) {
    bool xb = (x >> k) & 1u, zb = (z >> k) & 1u;
    r.set(k, xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
  }
  return {ipow(e), r};
}

PauliString tensor(const PauliString& a, const PauliString& b) {
  PauliString r(a.size() + b.size());
  for (int q = 0; q < a.size(); ++q) r.set(q, a.at(q));
  for (int q = 0; q < b.size(); ++q) r.set(a.size() + q, b.at(q));
  return r;
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms) : n_(n_qubits), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.string.size() != n_) throw std::invalid_argument("PauliSum: term length mismatch");
  canonicalize();
}

void PauliSum::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coeff) < kCoeffDropTol; });
  terms_ = std::move(merged);
}

PauliSum PauliSum::identity(int n_qubits, cplx c) { return PauliSum(n_qubits, {{c, PauliString(n_qubits)}}); }

PauliSum PauliSum::from_label(std::string_view label, cplx c) {
  auto p = PauliString::from_label(label);
  return PauliSum(p.size(), {{c, p}});
}

cplx PauliSum::coefficient(const PauliString& p) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                             [](const PauliTerm& t, const PauliString& s) { return t.string < s; });
  if (it != terms_.end() && it->string == p) return it->coeff;
  return 0.0;
}

cplx PauliSum::identity_coeff() const { return coefficient(PauliString(n_)); }

PauliSum PauliSum::without_identity() const {
  PauliSum r(n_);
  for (const auto& t : terms_)
    if (!t.string.is_identity()) r.terms_.push_back(t);
  return r;
}

PauliSum PauliSum::transpose() const {
  PauliSum r = *this;
  for (auto& t : r.terms_)
    if (t.string.y_count() % 2) t.coeff = -t.coeff;
  return r;
}

PauliSum PauliSum::adjoint() const {
  PauliSum r = *this;
  for (auto& t : r.terms_) t.coeff = std::conj(t.coeff);
  return r;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
}

double PauliSum::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

std::size_t PauliSum::non_identity_count() const {
  return std::count_if(terms_.begin(), terms_.end(), [](const PauliTerm& t) { return !t.string.is_identity(); });
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
  if (o.n_ != n_) throw std::invalid_argument("PauliSum +: size mismatch");
  auto all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return PauliSum(n_, std::move(all));
}

PauliSum PauliSum::operator-(const PauliSum& o) const { return *this + o * cplx(-1.0); }

PauliSum PauliSum::operator*(const PauliSum& o) const {
  if (o.n_ != n_) throw std::invalid_argument("PauliSum *: size mismatch");
  std::vector<PauliTerm> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto [ph, s] = multiply(a.string, b.string);
      all.push_back({a.coeff * b.coeff * ph, s});
    }
  return PauliSum(n_, std::move(all));
}

PauliSum PauliSum::operator*(cplx s) const {
  auto all = terms_;
  for (auto& t : all) t.coeff *= s;
  return PauliSum(n_, std::move(all));
}

std::string PauliSum::to_text() const {
  std::string out;
  for (const auto& t : terms_) {
    out += "(" + fmt_double(t.coeff.real()) + "," + fmt_double(t.coeff.imag()) + ") " + t.string.label() + "\n";
  }
  return out;
}

PauliSum PauliSum::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliTerm> terms;
  int n = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double re = 0, im = 0;
    char label[80] = {0};
    if (std::sscanf(line.c_str(), " (%lf,%lf) %79s", &re, &im, label) != 3) {
      throw std::invalid_argument("bad Pauli term line: " + line);
    }
    auto p = PauliString::from_label(label);
    if (n < 0) n = p.size();
    terms.push_back({cplx(re, im), p});
  }
  return PauliSum(std::max(n, 0), std::move(terms));
}

std::string PauliSum::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : terms_) j.push_back({{"re", t.coeff.real()}, {"im", t.coeff.imag()}, {"label", t.string.label()}});
  return j.dump();
}

PauliSum PauliSum::from_json(std::string_view text) {
  auto j = nlohmann::json::parse(text);
  std::vector<PauliTerm> terms;
  int n = 0;
  for (const auto& e : j) {
    auto p = PauliString::from_label(e.at("label").get<std::string>());
    n = p.size();
    terms.push_back({cplx(e.at("re").get<double>(), e.at("im").get<double>()), p});
  }
  return PauliSum(n, std::move(terms));
}

PauliSum number_operator(int k) {
  if (k < 1) throw std::invalid_argument("number_operator: k >= 1");
  double n = std::ldexp(1.0, k) - 1.0;
  std::vector<PauliTerm> terms{{n / 2.0, PauliString(k)}};
  for (int j = 0; j < k; ++j) terms.push_back({-std::ldexp(1.0, k - j - 1) / 2.0, PauliString::single(k, j, 'Z')});
  return PauliSum(k, std::move(terms));
}

PauliSum number_squared_operator(int k) {
  if (k < 1) throw std::invalid_argument("number_squared_operator: k >= 1");
  double n = std::ldexp(1.0, k) - 1.0;
  double c0 = n * n / 4.0;
  for (int j = 0; j < k; ++j) c0 += std::ldexp(1.0, 2 * (k - j - 2));
  std::vector<PauliTerm> terms{{c0, PauliString(k)}};
  for (int j = 0; j < k; ++j) terms.push_back({-n * std::ldexp(1.0, k - j - 2), PauliString::single(k, j, 'Z')});
  for (int j = 1; j < k; ++j)
    for (int l = 0; l < j; ++l) {
      PauliString p(k);
      p.set(j, 'Z');
      p.set(l, 'Z');
      terms.push_back({std::ldexp(1.0, 2 * k - j - l - 3), p});
    }
  return PauliSum(k, std::move(terms));
}

PauliSum outer_product(int k, std::uint64_t row, std::uint64_t col) {
  struct Factor {
    cplx c[2];
    char op[2];
  };
  std::vector<Factor> factors(k);
  for (int j = 0; j < k; ++j) {
    int r = (row >> (k - 1 - j)) & 1u;
    int c = (col >> (k - 1 - j)) & 1u;
    if (r == c) {
      factors[j] = {{0.5, r == 0 ? 0.5 : -0.5}, {'I', 'Z'}};
    } else {
      factors[j] = {{0.5, r == 0 ? cplx(0, 0.5) : cplx(0, -0.5)}, {'X', 'Y'}};
    }
  }
  std::vector<PauliTerm> terms;
  terms.reserve(std::size_t{1} << k);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    PauliString p(k);
    cplx c = 1.0;
    for (int j = 0; j < k; ++j) {
      int b = (m >> j) & 1u;
      c *= factors[j].c[b];
      p.set(j, factors[j].op[b]);
    }
    terms.push_back({c, p});
  }
  return PauliSum(k, std::move(terms));
}

PauliSum ladder_operator(int k, LadderKind kind) {
  if (k < 1) throw std::invalid_argument("ladder_operator: k >= 1");
  std::uint64_t n = (std::uint64_t{1} << k) - 1;
  std::vector<PauliTerm> all;
  for (std::uint64_t i = 0; i < n; ++i) {
    double amp = std::sqrt(static_cast<double>(i + 1));
    auto op = kind == LadderKind::annihilate ? outer_product(k, i, i + 1) : outer_product(k, i + 1, i);
    for (const auto& t : op.terms()) all.push_back({amp * t.coeff, t.string});
  }
  return PauliSum(k, std::move(all));
}

PauliString embed_at(const PauliString& local, int offset, int n_total) {
  if (offset < 0 || offset + local.size() > n_total) throw std::out_of_range("embed: block outside register");
  PauliString r(n_total);
  for (int q = 0; q < local.size(); ++q) r.set(offset + q, local.at(q));
  return r;
}

PauliSum embed_at(const PauliSum& local, int offset, int n_total) {
  std::vector<PauliTerm> terms;
  terms.reserve(local.size());
  for (const auto& t : local.terms()) terms.push_back({t.coeff, embed_at(t.string, offset, n_total)});
  return PauliSum(n_total, std::move(terms));
}

PauliSum embed(const PauliSum& local, int mode, const ModelParams& params) {
  if (mode < 1 || mode > params.n_modes) throw std::out_of_range("embed: mode out of range");
  if (local.n_qubits() != params.trunc_bits) throw std::invalid_argument("embed: local operator must act on k qubits");
  return embed_at(local, (mode - 1) * params.trunc_bits, params.n_qubits());
}

int dense_limit() { return g_dense_limit; }
void set_dense_limit(int n_qubits) { g_dense_limit = n_qubits; }

DenseAction dense_action(const PauliString& p) {
  DenseAction a;
  int n = p.size();
  for (int q = 0; q < n; ++q) {
    std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    if ((p.xbits() >> q) & 1u) a.flip |= bit;
    if ((p.zbits() >> q) & 1u) a.sign |= bit;
  }
  a.base = ipow(p.y_count());
  return a;
}

DenseOperator to_dense(const PauliString& p) {
  check_dense(p.size());
  return to_dense(PauliSum(p.size(), {{1.0, p}}));
}

DenseOperator to_dense(const PauliSum& s) {
  int n = s.n_qubits();
  check_dense(n);
  std::uint64_t dim = std::uint64_t{1} << n;
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& t : s.terms()) {
    auto a = dense_action(t.string);
    for (std::uint64_t c = 0; c < dim; ++c) {
      double sg = (std::popcount(c & a.sign) & 1) ? -1.0 : 1.0;
      m(c ^ a.flip, c) += t.coeff * a.base * sg;
    }
  }
  return m;
}

PauliSum project_to_pauli(const DenseOperator& op) {
  if (op.rows() != op.cols()) throw std::invalid_argument("project_to_pauli: non-square");
  std::uint64_t dim = op.rows();
  if (dim == 0 || (dim & (dim - 1))) throw std::invalid_argument("project_to_pauli: dimension not a power of two");
  int n = std::countr_zero(dim);
  check_dense(n);
  std::vector<PauliTerm> terms;
  for (std::uint64_t xm = 0; xm < dim; ++xm) {
    bool any = false;
    for (std::uint64_t s = 0; s < dim && !any; ++s) any = op(s, s ^ xm) != cplx(0.0);
    if (!any) continue;
    for (std::uint64_t zm = 0; zm < dim; ++zm) {
      // dense masks -> label
      PauliString p(n);
      for (int q = 0; q < n; ++q) {
        std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        bool xb = xm & bit, zb = zm & bit;
        p.set(q, xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
      }
      cplx base = ipow(p.y_count());
      cplx tr = 0.0;
      for (std::uint64_t s = 0; s < dim; ++s) {
        double sg = (std::popcount(s & zm) & 1) ? -1.0 : 1.0;
        tr += sg * op(s, s ^ xm);
      }
      tr *= base;
      terms.push_back({tr / static_cast<double>(dim), p});
    }
  }
  return PauliSum(n, std::move(terms));
}

StateVector apply(const PauliSum& s, const StateVector& psi) {
  std::uint64_t dim = psi.size();
  if (dim != (std::uint64_t{1} << s.n_qubits())) throw std::invalid_argument("apply: dimension mismatch");
  StateVector out = StateVector::Zero(dim);
  for (const auto& t : s.terms()) {
    auto a = dense_action(t.string);
    cplx c = t.coeff * a.base;
    for (std::uint64_t r = 0; r < dim; ++r) {
      double sg = (std::popcount(r & a.sign) & 1) ? -1.0 : 1.0;
      out[r ^ a.flip] += c * sg * psi[r];
    }
  }
  return out;
}

cplx expectation(const PauliSum& s, const StateVector& psi) { return psi.dot(apply(s, psi)); }

}  // namespace ejcm
