#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpttomo/gpt_model.hpp"
#include "gpttomo/tomography.hpp"

namespace gpttomo {

enum class SepMethod { lp, ppt_embed, cone_predicate };

/// Explicit convex decomposition into products of local states.
struct SepCertificate {
  std::vector<double> weights;
  std::vector<Vec> states_a;
  std::vector<Vec> states_b;
};

struct SepVerdict {
  bool separable = false;
  SepMethod method = SepMethod::lp;
  std::optional<SepCertificate> certificate;
};

struct EntanglementReport {
  bool separable = false;
  bool has_tl = false;
  bool has_tnl = false;
  double tnl_component_norm = 0.0;
  SepMethod method = SepMethod::lp;
  std::optional<SepCertificate> certificate;  // of the state, or of its local-span part
};

/// Separability of a joint state. Polytopic theories run a convex-membership
/// LP over products of local extreme states; two-rebit composites use the
/// exact route (PPT of the embedded state together with a vanishing holistic
/// component); two-qubit composites use PPT alone.
SepVerdict is_separable_state(const Vec& omega, const CompositeSystem& comp,
                              bool want_certificate = false);

/// True iff the holistic component of omega is nonzero; also returns its
/// sup-norm (entrywise, in the matrix picture when the theory has one).
std::pair<bool, double> has_tnl_entanglement(const Vec& omega,
                                             const TomographicDecomposition& dec,
                                             const CompositeSystem& comp);

/// True iff the local-span component of omega is not separable. When that
/// component is not even a valid state the answer is immediate; otherwise its
/// separability is decided as in is_separable_state.
std::pair<bool, std::optional<SepCertificate>> has_tl_entanglement(
    const Vec& omega, const CompositeSystem& comp, const TomographicDecomposition& dec,
    bool want_certificate = false);

EntanglementReport classify(const Vec& omega, const CompositeSystem& comp,
                            const TomographicDecomposition& dec, bool want_certificate = false);

/// Conic membership of a joint effect in nonnegative combinations of
/// products of local effect generators; exact for holistic components.
bool is_separable_effect(const Vec& effect, const CompositeSystem& comp);

/// Convex decomposition of a (valid, holistic-free) two-rebit state into
/// products of pure local states, found by column generation over the
/// product manifold. Returns nullopt when no decomposition exists.
std::optional<SepCertificate> rebit_product_decomposition(const Vec& omega);

nlohmann::json entanglement_report_to_json(const EntanglementReport& rep);

}  // namespace gpttomo
