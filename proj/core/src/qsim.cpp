// Copyright 2026 The MOVCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "movco/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

namespace movco::qsim {

std::string to_string(const Ansatz& ansatz) {
  if (ansatz.kind == AnsatzKind::kProduct) {
    return "product";
  }
  return "layered(" + std::to_string(ansatz.layers) + ")";
}

ParameterVector::ParameterVector(Ansatz ansatz, std::size_t num_qubits,
                                 std::vector<double> angles)
    : ansatz_(ansatz), num_qubits_(num_qubits), angles_(std::move(angles)) {
  if (num_qubits_ == 0) {
    throw InvalidArgument("ParameterVector: at least one qubit is required");
  }
  if (ansatz_.kind == AnsatzKind::kProduct) {
    ansatz_.layers = 0;
  }
  const std::size_t expected = ansatz_.parameter_count(num_qubits_);
  if (angles_.size() != expected) {
    throw InvalidArgument("ParameterVector: " + to_string(ansatz_) + " on " +
                          std::to_string(num_qubits_) + " qubits needs " +
                          std::to_string(expected) + " angles, got " +
                          std::to_string(angles_.size()));
  }
  for (double a : angles_) {
    if (!std::isfinite(a)) {
      throw InvalidArgument("ParameterVector: non-finite angle");
    }
  }
}

ParameterVector ParameterVector::with_ansatz(Ansatz ansatz) const {
  return ParameterVector(ansatz, num_qubits_, angles_);
}

ParameterVector init_params(int num_qubits, int layers, Rng& rng) {
  if (num_qubits < 1) {
    throw InvalidArgument("init_params: qubit count must be >= 1");
  }
  if (layers < 0) {
    throw InvalidArgument("init_params: layer count must be >= 0");
  }
  const auto n = static_cast<std::size_t>(num_qubits);
  const auto l = static_cast<std::size_t>(layers);
  std::vector<double> angles(n * (l + 1));
  for (std::size_t q = 0; q < n; ++q) {
    angles[q] = std::numbers::pi / 4 + uniform_real(rng, -0.01, 0.01);
  }
  for (std::size_t i = n; i < angles.size(); ++i) {
    angles[i] = uniform_real(rng, -0.01, 0.01);
  }
  return ParameterVector(Ansatz::layered(l), n, std::move(angles));
}

ParameterVector init_product_params(int num_qubits, Rng& rng) {
  return init_params(num_qubits, 0, rng).with_ansatz(Ansatz::product());
}

ParameterVector init_params(const Ansatz& ansatz, int num_qubits, Rng& rng) {
  if (ansatz.kind == AnsatzKind::kProduct) {
    return init_product_params(num_qubits, rng);
  }
  return init_params(num_qubits, static_cast<int>(ansatz.layers), rng);
}

// ---------------------------------------------------------------------------
// Bitstring

Bitstring::Bitstring(std::size_t size) : size_(size), words_(words_for(size), 0) {}

Bitstring::Bitstring(std::size_t size, std::span<const std::uint64_t> words)
    : size_(size), words_(words.begin(), words.end()) {
  if (words_.size() != words_for(size)) {
    throw InvalidArgument("Bitstring: word count does not match bit count");
  }
  if (size % 64 != 0 && !words_.empty()) {
    words_.back() &= (1ULL << (size % 64)) - 1;
  }
}

Bitstring Bitstring::from_index(std::size_t size, std::uint64_t index) {
  if (size > 64) {
    throw InvalidArgument("Bitstring::from_index: more than 64 bits");
  }
  Bitstring b(size);
  if (size > 0) {
    b.words_[0] = size == 64 ? index : (index & ((1ULL << size) - 1));
  }
  return b;
}

Bitstring Bitstring::from_string(std::string_view text) {
  Bitstring b(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    if (text[q] == '1') {
      b.set(q, true);
    } else if (text[q] != '0') {
      throw InvalidArgument("Bitstring::from_string: expected only '0' and '1'");
    }
  }
  return b;
}

void Bitstring::set(std::size_t q, bool value) {
  const std::uint64_t mask = 1ULL << (q & 63);
  if (value) {
    words_[q >> 6] |= mask;
  } else {
    words_[q >> 6] &= ~mask;
  }
}

std::uint64_t Bitstring::to_index() const {
  if (size_ > 64) {
    throw InvalidArgument("Bitstring::to_index: more than 64 bits");
  }
  return words_.empty() ? 0 : words_[0];
}

std::string Bitstring::to_string() const {
  std::string s(size_, '0');
  for (std::size_t q = 0; q < size_; ++q) {
    if (test(q)) {
      s[q] = '1';
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// StateVector

namespace {

void check_statevector_size(std::size_t num_qubits, const SimulatorLimits& limits) {
  if (num_qubits > limits.max_statevector_qubits) {
    throw ResourceLimit("statevector of " + std::to_string(num_qubits) +
                        " qubits exceeds the configured limit of " +
                        std::to_string(limits.max_statevector_qubits));
  }
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amplitudes_(std::size_t{1} << num_qubits) {
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<std::complex<double>> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw InvalidArgument("StateVector: amplitude count must be 2^N");
  }
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dimension()) {
    throw InvalidArgument("StateVector::basis: index out of range");
  }
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) {
    total += std::norm(a);
  }
  return total;
}

void StateVector::apply_ry(std::size_t qubit, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amplitudes_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const auto a0 = amplitudes_[i];
      const auto a1 = amplitudes_[i + stride];
      amplitudes_[i] = c * a0 + s * a1;
      amplitudes_[i + stride] = c * a1 - s * a0;
    }
  }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & mask) == mask) {
      amplitudes_[i] = -amplitudes_[i];
    }
  }
}

void StateVector::apply_entangler() {
  if (num_qubits_ < 2) {
    return;
  }
  // Product of CZ(n, n+1) is diagonal: the sign is the parity of adjacent 11 pairs.
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const std::size_t pairs = i & (i >> 1);
    if (std::popcount(pairs) & 1) {
      amplitudes_[i] = -amplitudes_[i];
    }
  }
}

StateVector build_state(const ParameterVector& params, const SimulatorLimits& limits) {
  if (params.kind() != AnsatzKind::kLayered) {
    throw InvalidArgument("build_state: expects a layered-ansatz parameter vector");
  }
  const std::size_t n = params.num_qubits();
  check_statevector_size(n, limits);
  StateVector state(n);
  for (std::size_t q = 0; q < n; ++q) {
    state.apply_ry(q, params.angle(q, 0));
  }
  for (std::size_t l = 1; l <= params.layers(); ++l) {
    state.apply_entangler();
    for (std::size_t q = 0; q < n; ++q) {
      state.apply_ry(q, params.angle(q, l));
    }
  }
  return state;
}

StateVector build_product_state(const ParameterVector& params, const SimulatorLimits& limits) {
  if (params.kind() != AnsatzKind::kProduct) {
    throw InvalidArgument("build_product_state: expects a product-ansatz parameter vector");
  }
  const std::size_t n = params.num_qubits();
  check_statevector_size(n, limits);
  std::vector<std::complex<double>> amps(std::size_t{1} << n);
  for (std::size_t x = 0; x < amps.size(); ++x) {
    double a = 1.0;
    for (std::size_t q = 0; q < n; ++q) {
      const double theta = params.angle(q, 0);
      a *= ((x >> q) & 1) ? std::sin(theta) : std::cos(theta);
    }
    amps[x] = a;
  }
  return StateVector(n, std::move(amps));
}

// ---------------------------------------------------------------------------
// Sampling

SampleBatch::SampleBatch(std::size_t num_qubits, std::size_t shots)
    : num_qubits_(num_qubits),
      shots_(shots),
      words_per_shot_(words_for(num_qubits)),
      data_(shots * words_for(num_qubits), 0) {}

std::map<std::string, std::size_t> SampleBatch::counts() const {
  std::map<std::string, std::size_t> out;
  for (std::size_t k = 0; k < shots_; ++k) {
    ++out[bitstring(k).to_string()];
  }
  return out;
}

SampleBatch sample_state(const StateVector& state, std::size_t shots, Rng& rng) {
  if (shots == 0) {
    throw InvalidArgument("sample_state: shot count must be >= 1");
  }
  const double norm = state.norm_squared();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw InvalidState("sample_state: state is not normalized (|psi|^2 = " +
                       std::to_string(norm) + ")");
  }
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double running = 0.0;
  for (std::size_t x = 0; x < amps.size(); ++x) {
    running += std::norm(amps[x]);
    cdf[x] = running;
  }

  SampleBatch batch(state.num_qubits(), shots);
  const std::uint64_t last = amps.size() - 1;
  for (std::size_t k = 0; k < shots; ++k) {
    const double u = uniform01(rng) * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto index = static_cast<std::uint64_t>(it - cdf.begin());
    index = std::min(index, last);
    // upper_bound can land on a zero-probability slot only through a tie at
    // the top of the CDF; step back to the last slot that carries mass.
    while (index > 0 && std::norm(amps[index]) == 0.0) {
      --index;
    }
    if (batch.words_per_shot() > 0) {
      batch.mutable_row(k)[0] = index;
    }
  }
  return batch;
}

SampleBatch sample_product(const ParameterVector& params, std::size_t shots, Rng& rng) {
  if (params.kind() != AnsatzKind::kProduct) {
    throw InvalidArgument("sample_product: expects a product-ansatz parameter vector");
  }
  if (shots == 0) {
    throw InvalidArgument("sample_product: shot count must be >= 1");
  }
  const std::size_t n = params.num_qubits();
  constexpr double kScale = 4294967296.0;  // 2^32
  std::vector<std::uint64_t> thresholds(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double s = std::sin(params.angle(q, 0));
    const double p_one = std::clamp(s * s, 0.0, 1.0);
    thresholds[q] = static_cast<std::uint64_t>(std::llround(p_one * kScale));
  }

  SampleBatch batch(n, shots);
  for (std::size_t k = 0; k < shots; ++k) {
    auto row = batch.mutable_row(k);
    std::uint64_t pool = 0;
    int available = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (available == 0) {
        pool = rng();
        available = 2;
      }
      const std::uint64_t draw = pool & 0xffffffffULL;
      pool >>= 32;
      --available;
      if (draw < thresholds[q]) {
        row[q >> 6] |= 1ULL << (q & 63);
      }
    }
  }
  return batch;
}

SampleBatch sample(const ParameterVector& params, std::size_t shots, Rng& rng,
                   const SimulatorLimits& limits) {
  if (params.kind() == AnsatzKind::kProduct) {
    return sample_product(params, shots, rng);
  }
  return sample_state(build_state(params, limits), shots, rng);
}

double basis_probability(const StateVector& state, const Bitstring& bits) {
  if (bits.size() != state.num_qubits()) {
    throw InvalidArgument("basis_probability: bitstring has " + std::to_string(bits.size()) +
                          " bits, state has " + std::to_string(state.num_qubits()) + " qubits");
  }
  return state.probability(bits.to_index());
}

std::vector<double> product_one_probabilities(const ParameterVector& params) {
  if (params.kind() != AnsatzKind::kProduct) {
    throw InvalidArgument("product_one_probabilities: expects a product-ansatz vector");
  }
  std::vector<double> out(params.num_qubits());
  for (std::size_t q = 0; q < out.size(); ++q) {
    const double s = std::sin(params.angle(q, 0));
    out[q] = s * s;
  }
  return out;
}

double product_basis_probability(const ParameterVector& params, const Bitstring& bits) {
  if (bits.size() != params.num_qubits()) {
    throw InvalidArgument("product_basis_probability: length mismatch");
  }
  const auto ones = product_one_probabilities(params);
  double p = 1.0;
  for (std::size_t q = 0; q < ones.size(); ++q) {
    p *= bits.test(q) ? ones[q] : 1.0 - ones[q];
  }
  return p;
}

}  // namespace movco::qsim
