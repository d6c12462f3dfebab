#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ejcm {

struct ModelParams {
  int n_modes = 1;
  int trunc_bits = 1;
  std::vector<double> mode_freqs;
  double atom_freq = 0.0;
  std::vector<double> couplings;
  // absolute tolerance for counting a mode as resonant; 0 means exact equality
  double resonance_tol = 0.0;

  int n_qubits() const { return n_modes * trunc_bits + 1; }
  int atom_qubit() const { return n_modes * trunc_bits; }
  int cutoff() const { return (1 << trunc_bits) - 1; }
};

struct DerivedScalars {
  int n = 0;
  double omega_max = 0.0;
  double gamma_max = 0.0;
  std::vector<double> delta;
  double delta_max = 0.0;
  int M0 = 0;
  double Lambda_k = 0.0;
};

class ValidationError : public std::runtime_error {
 public:
  enum class Kind { length_mismatch, bad_trunc_bits, bad_mode_count, non_finite, parse };
  ValidationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

ModelParams validate(const ModelParams& raw);
DerivedScalars derive(const ModelParams& params);

double lambda_k(int k);
bool is_resonant(const ModelParams& params, int mode);

// JSON keys: n_modes, trunc_bits, mode_freqs, atom_freq, couplings (resonance_tol optional)
ModelParams params_from_json(std::string_view text);
ModelParams load_params(const std::string& path);
std::string params_to_json(const ModelParams& params);

}  // namespace ejcm
