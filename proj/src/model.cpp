#include "ejcm/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ejcm {

namespace {

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ValidationError(ValidationError::Kind::non_finite, std::string("non-finite value in ") + name);
  }
}

}  // namespace

ModelParams validate(const ModelParams& raw) {
  using K = ValidationError::Kind;
  if (raw.n_modes < 1) throw ValidationError(K::bad_mode_count, "n_modes must be >= 1");
  if (raw.trunc_bits < 1) throw ValidationError(K::bad_trunc_bits, "trunc_bits must be >= 1");
  if (raw.trunc_bits > 20) throw ValidationError(K::bad_trunc_bits, "trunc_bits must be <= 20");
  if (static_cast<int>(raw.mode_freqs.size()) != raw.n_modes ||
      static_cast<int>(raw.couplings.size()) != raw.n_modes) {
    std::ostringstream msg;
    msg << "length mismatch: n_modes=" << raw.n_modes << ", mode_freqs=" << raw.mode_freqs.size()
        << ", couplings=" << raw.couplings.size();
    throw ValidationError(K::length_mismatch, msg.str());
  }
  if (raw.n_qubits() > 64) throw ValidationError(K::bad_mode_count, "register exceeds 64 qubits");
  for (double w : raw.mode_freqs) check_finite(w, "mode_freqs");
  for (double g : raw.couplings) check_finite(g, "couplings");
  check_finite(raw.atom_freq, "atom_freq");
  check_finite(raw.resonance_tol, "resonance_tol");
  if (raw.resonance_tol < 0) throw ValidationError(K::non_finite, "resonance_tol must be >= 0");
  return raw;
}

double lambda_k(int k) { return std::pow(std::ldexp(1.0, k) + 1.0, 1.5) - 1.0; }

bool is_resonant(const ModelParams& params, int mode) {
  double d = params.mode_freqs[mode] - params.atom_freq;
  if (params.resonance_tol == 0.0) return params.mode_freqs[mode] == params.atom_freq;
  return std::abs(d) <= params.resonance_tol;
}

DerivedScalars derive(const ModelParams& params) {
  DerivedScalars d;
  d.n = params.cutoff();
  d.omega_max = std::abs(params.atom_freq);
  for (int m = 0; m < params.n_modes; ++m) {
    d.omega_max = std::max(d.omega_max, std::abs(params.mode_freqs[m]));
    d.gamma_max = std::max(d.gamma_max, std::abs(params.couplings[m]));
    double delta = params.mode_freqs[m] - params.atom_freq;
    d.delta.push_back(delta);
    d.delta_max = std::max(d.delta_max, std::abs(delta));
    if (is_resonant(params, m)) ++d.M0;
  }
  d.Lambda_k = lambda_k(params.trunc_bits);
  return d;
}

ModelParams params_from_json(std::string_view text) {
  using K = ValidationError::Kind;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(K::parse, std::string("invalid JSON: ") + e.what());
  }
  ModelParams p;
  try {
    p.n_modes = j.at("n_modes").get<int>();
    p.trunc_bits = j.at("trunc_bits").get<int>();
    p.mode_freqs = j.at("mode_freqs").get<std::vector<double>>();
    p.atom_freq = j.at("atom_freq").get<double>();
    p.couplings = j.at("couplings").get<std::vector<double>>();
    if (j.contains("resonance_tol")) p.resonance_tol = j.at("resonance_tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(K::parse, std::string("bad parameter record: ") + e.what());
  }
  return validate(p);
}

ModelParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(ValidationError::Kind::parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return params_from_json(ss.str());
}

std::string params_to_json(const ModelParams& params) {
  nlohmann::json j;
  j["n_modes"] = params.n_modes;
  j["trunc_bits"] = params.trunc_bits;
  j["mode_freqs"] = params.mode_freqs;
  j["atom_freq"] = params.atom_freq;
  j["couplings"] = params.couplings;
  if (params.resonance_tol != 0.0) j["resonance_tol"] = params.resonance_tol;
  return j.dump();
}

}  // namespace ejcm
