#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gpttomo/linalg.hpp"

namespace gpttomo {

struct GptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SteeringClosureError : GptError {
  using GptError::GptError;
};
struct UnsupportedTheoryError : GptError {
  using GptError::GptError;
};

/// A finite-dimensional system: carrier space, state and effect generators
/// and the unit effect. Non-polytopic theories additionally install
/// membership predicates for the normalized state set and the effect set;
/// these are keyed by `kind` and re-attached after deserialization.
struct GptSystem {
  std::string name;
  std::string kind;  // "classical", "bct-joint", "rebit", "two-rebit", "qubit", "two-qubit", ...
  std::size_t dim = 0;
  std::vector<Vec> state_generators;   // normalized states
  std::vector<Vec> effect_generators;  // includes the unit effect
  Vec unit_effect;
  std::vector<std::string> labels;  // optional coordinate labels

  // Canonical bases used by the effect-state projector representation.
  std::vector<Vec> canonical_state_basis;
  std::vector<Vec> canonical_effect_basis;

  // Predicates on the *normalized* state set and the effect set.
  std::function<bool(const Vec&)> in_normalized_states;
  std::function<bool(const Vec&)> in_effects;
};

/// Is v a valid element of the full (subnormalized) state set, i.e. of
/// ConvHull(0, Omega)? Scales by the unit-effect value and defers to the
/// normalized-state predicate.
bool in_subnormalized_states(const GptSystem& sys, const Vec& v, double tol = kTolNum);

struct CompositeSystem {
  std::string name;
  std::string kind;  // routing tag: "polytopic", "two-rebit", "two-qubit", "bct", ...
  GptSystem sys_a;
  GptSystem sys_b;
  GptSystem joint;
  // Bilinear product maps as matrices acting on flattened pairs
  // (index i*dim_b + j).
  Mat state_product;   // dim(AB)   x dim(A)*dim(B)
  Mat effect_product;  // dim(AB)*  x dim(A)*dim(B)
  // Two-outcome joint measurement that perfectly discriminates the theory's
  // hiding pair, when one is registered.
  std::optional<std::pair<Vec, Vec>> discrimination_measurement;
};

enum class Party { A, B };

struct SteeredVector {
  Party system = Party::A;
  Vec vector;
  double norm = 0.0;  // value of the local unit effect
};

Vec boxtimes_state(const Vec& omega, const Vec& nu, const CompositeSystem& comp);
Vec boxtimes_effect(const Vec& e, const Vec& f, const CompositeSystem& comp);

/// Conditional state on the party opposite to `effect_party`, obtained by
/// pairing the joint state with a local effect. Solved as a least-squares
/// system against the spanning effect set of the target party; a residual
/// above kTolNum throws SteeringClosureError.
SteeredVector conditional_state(const Vec& local_effect, Party effect_party,
                                const Vec& joint_state, const CompositeSystem& comp);

/// Conditional effect on the party opposite to `state_party`.
SteeredVector conditional_effect(const Vec& local_state, Party state_party,
                                 const Vec& joint_effect, const CompositeSystem& comp);

struct CompositionItem {
  bool pass = true;
  double worst_residual = 0.0;
  std::string detail;
};

/// Per-item report of the composition requirements: product validity,
/// probability factorization, unit factorization and steering closure.
struct CompositionReport {
  CompositionItem product_states_valid;
  CompositionItem product_effects_valid;
  CompositionItem probability_factorization;
  CompositionItem unit_factorization;
  CompositionItem steering_closure;
  bool all_pass() const;
};

CompositionReport validate_composition(const CompositeSystem& comp);

/// True iff the joint state generators span a space of dimension
/// dim(A)*dim(B); cross-checked against the holistic subspace being trivial.
bool is_tomographically_local(const CompositeSystem& comp);

// JSON (de)serialization; schema "gpt-tomo/1". Membership predicates are not
// serialized; theories::attach_predicates restores them by kind.
nlohmann::json system_to_json(const GptSystem& sys);
GptSystem system_from_json(const nlohmann::json& j);
nlohmann::json composite_to_json(const CompositeSystem& comp);
CompositeSystem composite_from_json(const nlohmann::json& j);

}  // namespace gpttomo
