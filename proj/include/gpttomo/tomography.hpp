#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gpttomo/gpt_model.hpp"
#include "gpttomo/linalg.hpp"

namespace gpttomo {

/// Splitting of a composite carrier space into the span of products and its
/// holistic complement, with the projectors onto each part.
struct TomographicDecomposition {
  Subspace ab_tensor;       // span of product states
  Subspace ab_tensor_dual;  // span of product effects
  Subspace h_state;         // annihilator of the product-effect span
  Subspace h_effect;        // annihilator of the product-state span
  Mat pi_tl;
  Mat pi_tnl;
};

/// Spans of {omega_i [x] nu_j} and {e_k [x] f_l} over the local generators.
std::pair<Subspace, Subspace> tl_subspaces(const CompositeSystem& comp);

/// (H_S, H_E): annihilators of the product-effect and product-state spans.
std::pair<Subspace, Subspace> holistic_subspaces(const CompositeSystem& comp);

/// Projector onto the product span along the holistic complement.
Mat build_pi_tl(const CompositeSystem& comp);

/// Same projector assembled from local state/effect bases with inverse
/// pairing-matrix coefficients; must agree with build_pi_tl.
Mat build_pi_tl_effect_state(const CompositeSystem& comp, const std::vector<Vec>& a_states,
                             const std::vector<Vec>& a_effects, const std::vector<Vec>& b_states,
                             const std::vector<Vec>& b_effects);

/// Variant using the canonical bases registered on the local systems.
Mat build_pi_tl_effect_state(const CompositeSystem& comp);

/// Single-system sum of state-effect channels with inverse pairing
/// coefficients; equals the identity on the system's carrier space.
Mat effect_state_identity(const std::vector<Vec>& states, const std::vector<Vec>& effects);

/// Complementary projector: identity minus build_pi_tl.
Mat build_pi_tnl(const CompositeSystem& comp);

/// Projector onto the holistic part assembled as sum_k h_k h'_k over a
/// basis split into product and holistic parts and its dual basis.
Mat build_pi_tnl_hourglass(const CompositeSystem& comp, const std::vector<Vec>& product_basis,
                           const std::vector<Vec>& holistic_basis);
Mat build_pi_tnl_hourglass(const CompositeSystem& comp);

TomographicDecomposition decompose(const CompositeSystem& comp);

struct ProjectorLaw {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ProjectorLawReport {
  std::vector<ProjectorLaw> laws;
  bool all_pass() const;
  const ProjectorLaw* find(const std::string& name) const;
};

/// Checks the projector identities of the decomposition: idempotence,
/// complementarity, unit preservation/annihilation, fixing of product
/// states and effects, kernel characterizations, and the dual actions
/// projecting onto the product-effect span and H_E.
ProjectorLawReport verify_projector_laws(const TomographicDecomposition& dec,
                                         const CompositeSystem& comp);

/// Positive-definite Gram matrix making the product span orthogonal to the
/// holistic subspace; its Riesz map sends H_S onto H_E.
Mat splitting_inner_product(const TomographicDecomposition& dec);

nlohmann::json projector_law_report_to_json(const ProjectorLawReport& rep);

}  // namespace gpttomo
