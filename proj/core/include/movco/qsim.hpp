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

// Variational state simulation.
//
// Two ansatz families are supported:
//
//   * layered: R_y rotations on every qubit, then L repetitions of
//     (nearest-neighbour CZ chain, R_y rotations). Simulated as a full
//     statevector, so it is bounded by SimulatorLimits.
//   * product: one R_y rotation per qubit and no entangler. Never stores
//     2^N amplitudes; sampling only needs the N marginals cos^2(theta_n).
//
// Bit convention shared with the rest of the library: qubit q is bit q of a
// basis-state index, bit (q % 64) of word (q / 64) of a packed row, and the
// q-th character (from the left) of a serialized bitstring.

#ifndef MOVCO_QSIM_HPP
#define MOVCO_QSIM_HPP

#include <complex>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "movco/error.hpp"
#include "movco/random.hpp"

namespace movco::qsim {

enum class AnsatzKind { kLayered, kProduct };

struct Ansatz {
  AnsatzKind kind = AnsatzKind::kLayered;
  std::size_t layers = 1;  // ignored for kProduct

  static Ansatz layered(std::size_t layers) { return {AnsatzKind::kLayered, layers}; }
  static Ansatz product() { return {AnsatzKind::kProduct, 0}; }

  std::size_t parameter_count(std::size_t num_qubits) const {
    return kind == AnsatzKind::kProduct ? num_qubits : num_qubits * (layers + 1);
  }
  bool operator==(const Ansatz&) const = default;
};

std::string to_string(const Ansatz& ansatz);

/// Variational angles, stored layer-major: angle(n, l) = angles[l * N + n].
/// For the product ansatz there is a single "layer".
class ParameterVector {
 public:
  ParameterVector(Ansatz ansatz, std::size_t num_qubits, std::vector<double> angles);

  const Ansatz& ansatz() const { return ansatz_; }
  AnsatzKind kind() const { return ansatz_.kind; }
  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t layers() const { return ansatz_.kind == AnsatzKind::kProduct ? 0 : ansatz_.layers; }
  std::size_t size() const { return angles_.size(); }

  std::span<const double> angles() const { return angles_; }
  double angle(std::size_t qubit, std::size_t layer) const {
    return angles_[layer * num_qubits_ + qubit];
  }

  /// The same angles reinterpreted under another ansatz of equal length.
  ParameterVector with_ansatz(Ansatz ansatz) const;

  bool operator==(const ParameterVector&) const = default;

 private:
  Ansatz ansatz_;
  std::size_t num_qubits_;
  std::vector<double> angles_;
};

/// theta_{n0} = pi/4 + U(-0.01, 0.01); theta_{nl} = U(-0.01, 0.01) for l >= 1.
ParameterVector init_params(int num_qubits, int layers, Rng& rng);

/// Product-ansatz initialization: theta_n = pi/4 + U(-0.01, 0.01).
ParameterVector init_product_params(int num_qubits, Rng& rng);

/// Initializes for either ansatz family.
ParameterVector init_params(const Ansatz& ansatz, int num_qubits, Rng& rng);

/// Packed N-bit string. Qubit q lives at bit (q % 64) of word (q / 64).
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t size);
  Bitstring(std::size_t size, std::span<const std::uint64_t> words);

  static Bitstring from_index(std::size_t size, std::uint64_t index);
  /// Parses '0'/'1' characters; character q is qubit q.
  static Bitstring from_string(std::string_view text);

  std::size_t size() const { return size_; }
  bool test(std::size_t q) const { return (words_[q >> 6] >> (q & 63)) & 1ULL; }
  void set(std::size_t q, bool value);
  std::span<const std::uint64_t> words() const { return words_; }

  /// Basis-state index; only valid for size <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;

  auto operator<=>(const Bitstring&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

struct SimulatorLimits {
  std::size_t max_statevector_qubits = 24;
};

/// Dense 2^N amplitude vector. Immutable once handed out by build_state.
class StateVector {
 public:
  /// |0...0> on num_qubits qubits.
  explicit StateVector(std::size_t num_qubits);
  StateVector(std::size_t num_qubits, std::vector<std::complex<double>> amplitudes);

  static StateVector basis(std::size_t num_qubits, std::uint64_t index);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }
  double probability(std::uint64_t index) const { return std::norm(amplitudes_[index]); }
  double norm_squared() const;

  /// exp(i theta Y) on one qubit: |0> -> cos|0> - sin|1>.
  void apply_ry(std::size_t qubit, double theta);
  /// Controlled-Z; symmetric in its two qubits.
  void apply_cz(std::size_t a, std::size_t b);
  /// CZ between every nearest-neighbour pair (n, n+1) of the linear chain.
  void apply_entangler();

 private:
  std::size_t num_qubits_;
  std::vector<std::complex<double>> amplitudes_;
};

/// U(theta)|0>^N for the layered ansatz.
StateVector build_state(const ParameterVector& params, const SimulatorLimits& limits = {});

/// Amplitudes cos|0> + sin|1> per qubit, tensored. Test and small-N helper.
StateVector build_product_state(const ParameterVector& params,
                                const SimulatorLimits& limits = {});

/// K measured bitstrings, stored as K packed rows.
class SampleBatch {
 public:
  SampleBatch(std::size_t num_qubits, std::size_t shots);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t shots() const { return shots_; }
  std::size_t words_per_shot() const { return words_per_shot_; }

  std::span<const std::uint64_t> row(std::size_t shot) const {
    return {data_.data() + shot * words_per_shot_, words_per_shot_};
  }
  std::span<std::uint64_t> mutable_row(std::size_t shot) {
    return {data_.data() + shot * words_per_shot_, words_per_shot_};
  }
  Bitstring bitstring(std::size_t shot) const { return Bitstring(num_qubits_, row(shot)); }

  /// Distinct serialized bitstring -> count; counts sum to shots().
  std::map<std::string, std::size_t> counts() const;

  bool operator==(const SampleBatch&) const = default;

 private:
  std::size_t num_qubits_;
  std::size_t shots_;
  std::size_t words_per_shot_;
  std::vector<std::uint64_t> data_;
};

/// Tolerance on |1 - <psi|psi>| accepted by the samplers.
inline constexpr double kNormTolerance = 1e-9;

/// K independent computational-basis measurements of a normalized state.
SampleBatch sample_state(const StateVector& state, std::size_t shots, Rng& rng);

/// K shots of the product ansatz; bit n is 1 with probability sin^2(theta_n).
/// Marginals are resolved to 2^-32; theta = 0 and pi/2 are exact.
SampleBatch sample_product(const ParameterVector& params, std::size_t shots, Rng& rng);

/// Dispatches on the ansatz kind.
SampleBatch sample(const ParameterVector& params, std::size_t shots, Rng& rng,
                   const SimulatorLimits& limits = {});

double basis_probability(const StateVector& state, const Bitstring& bits);

/// sin^2(theta_n) for each qubit of a product-ansatz vector.
std::vector<double> product_one_probabilities(const ParameterVector& params);

/// Probability of `bits` under the product ansatz, as a product of marginals.
double product_basis_probability(const ParameterVector& params, const Bitstring& bits);

/// Sum_x |amp(x)|^2 cost(x) for a cost diagonal in the computational basis.
/// `cost` receives the basis index (qubit q = bit q).
template <class Cost>
  requires std::invocable<Cost&, std::uint64_t>
double exact_expectation(const StateVector& state, Cost&& cost) {
  double total = 0.0;
  const auto amps = state.amplitudes();
  for (std::uint64_t x = 0; x < amps.size(); ++x) {
    const double p = std::norm(amps[x]);
    if (p != 0.0) {
      total += p * static_cast<double>(cost(x));
    }
  }
  return total;
}

}  // namespace movco::qsim

#endif  // MOVCO_QSIM_HPP
