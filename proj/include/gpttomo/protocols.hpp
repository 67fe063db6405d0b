#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpttomo/config.hpp"
#include "gpttomo/entanglement.hpp"
#include "gpttomo/gpt_model.hpp"
#include "gpttomo/tomography.hpp"

namespace gpttomo {

/// A finite-outcome measurement: effects summing to the local unit.
using Measurement = std::vector<Vec>;

struct BellTable {
  std::size_t n_inputs_a = 0, n_inputs_b = 0;
  std::size_t n_outputs_a = 0, n_outputs_b = 0;
  std::vector<double> probs;  // index ((x * nY + y) * kA + a) * kB + b

  double p(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const;
  double& at(std::size_t a, std::size_t b, std::size_t x, std::size_t y);
  /// Throws GptError unless every slice is a distribution and the marginals
  /// are no-signalling to kTolNum.
  void validate() const;
};

BellTable bell_table(const Vec& omega, const std::vector<Measurement>& a_meas,
                     const std::vector<Measurement>& b_meas, const CompositeSystem& comp);

/// Local (deterministic-strategy) model for a Bell table.
struct LhvModel {
  bool feasible = false;
  std::vector<double> weights;
  std::vector<std::vector<int>> alice_strategies;  // outputs per input x
  std::vector<std::vector<int>> bob_strategies;
};

/// Membership of the table in the local polytope, solved as a feasibility LP
/// over deterministic strategies. Large scenarios are handled by column
/// generation: the pricing step maximizes the dual value over strategies by
/// enumerating one side and optimizing the other site-by-site.
LhvModel lhv_membership(const BellTable& table);

struct Assemblage {
  std::size_t n_inputs = 0, n_outputs = 0;
  std::vector<Vec> elements;  // [x * n_outputs + a], subnormalized
  std::vector<double> norms;
};

Assemblage steering_assemblage(const Vec& omega, const std::vector<Measurement>& a_meas,
                               const CompositeSystem& comp);

struct LhsCheck {
  bool pass = false;
  double worst_residual = 0.0;
};

/// Verifies the explicit local-hidden-state model built from a convex
/// product decomposition of the local-span part of the source state:
/// element(a,x) = sum_i p_i e_{a|x}(w_i) nu_i.
LhsCheck lhs_check(const Assemblage& assemblage, const std::vector<Measurement>& a_meas,
                   const SepCertificate& certificate, const CompositeSystem& comp);

struct TeleportCheck {
  bool pass = false;
  double max_holistic_norm = 0.0;   // largest holistic contribution over inputs
  double worst_model_residual = 0.0;
  std::size_t n_inputs = 0;
};

/// For a resource without local-span entanglement, checks that the
/// conditioned B-vector equals the certificate model for every input state
/// and that the holistic component contributes the zero vector. The
/// certificate must reproduce the local-span part of the resource; otherwise
/// the check refuses with GptError.
TeleportCheck teleportage_constancy(const Vec& omega, const Vec& joint_effect_sa,
                                    const std::vector<Vec>& inputs, const CompositeSystem& comp,
                                    const TomographicDecomposition& dec,
                                    const SepCertificate& certificate);

struct DenseCodeTranscript {
  int bit_x = 0, bit_y = 0;
  int decoded_x = 0, decoded_y = 0;
  double decode_prob = 0.0;
  bool certain = false;
  std::vector<double> outcome_probs;  // global 8-outcome readout
  double tampered_x_success = 0.0;    // product-effect-only decoding
  double tampered_y_success = 0.0;
};

/// Two bits through one bit: encode (x, y) into the joint state by local
/// maps, transmit, decode with the global extremal-state readout.
DenseCodeTranscript dense_code_bct(int x, int y);

struct HidingAudit {
  bool local_indistinguishable = false;
  bool globally_discriminable = false;
  bool tl_free = false;
  double worst_local_gap = 0.0;
  bool perfectly_secure() const {
    return local_indistinguishable && globally_discriminable && tl_free;
  }
};

/// Audits a candidate hiding pair: identical statistics on every product
/// effect, perfect discrimination by the registered joint measurement, and
/// absence of local-span entanglement in both states.
HidingAudit data_hiding_audit(const Vec& omega0, const Vec& omega1, const CompositeSystem& comp,
                              const TomographicDecomposition& dec);

/// Local Z-conjugation on the A rebit applied x times to the hiding carrier:
/// flips the sign of every coordinate whose A letter is X or Y.
Vec local_encode_rebit(int x);

struct LoccTranscript {
  int bit = 0;
  double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
  double alice_marginal0 = 0.0;
  int decoded = 0;
  Vec conditional_a0, conditional_a1;  // BB' vectors
  double conditional_residual = 0.0;   // against the expected halved hiding states
  std::size_t trials = 0, correct_trials = 0;
};

/// One-round decoding of a hidden bit with an extra holistic resource:
/// Alice measures the discriminator on AA', publishes a, Bob measures on
/// BB'; a xor b recovers the bit while a alone stays uniform.
LoccTranscript locc_decode(int x, std::uint64_t seed = kDefaultSeed, std::size_t trials = 1000);

struct SecretShareReport {
  bool pair_is_holistic_only = false;       // condition i
  bool product_indistinguishable = false;   // condition ii
  bool discriminable = false;               // condition iii
  bool remote_implementation = false;       // condition iv
  double worst_local_gap = 0.0;
  double residual_remote = 0.0;
  bool decodable = false;
  // Joint outcome tables of the executed runs, indexed by the hidden bit.
  double p00[2] = {0, 0}, p01[2] = {0, 0}, p10[2] = {0, 0}, p11[2] = {0, 0};
};

/// Checks the four generalized conditions for secure secret sharing with a
/// holistic resource and, when they hold, runs the a-xor-b protocol.
/// Supported for the two-rebit and bct composites.
SecretShareReport secret_sharing_conditions(const CompositeSystem& comp, const Vec& omega0,
                                            const Vec& omega1,
                                            const std::pair<Vec, Vec>& measurement,
                                            const Vec& swap_resource);

/// sigma_x / sigma_z binary measurements plus `n_random` seeded
/// dihedral-angle measurements for one rebit site.
std::vector<Measurement> rebit_measurement_family(std::uint64_t seed, std::size_t n_random = 8);

}  // namespace gpttomo
