#include "gpttomo/gpt_model.hpp"

#include <algorithm>
#include <cmath>

#include "gpttomo/simplex.hpp"

namespace gpttomo {

bool in_subnormalized_states(const GptSystem& sys, const Vec& v, double tol) {
  const double p = dot(sys.unit_effect, v);
  if (p < -tol || p > 1.0 + tol) return false;
  if (p <= tol) return norm_inf(v) <= tol;
  if (!sys.in_normalized_states) throw UnsupportedTheoryError("system has no state predicate: " + sys.name);
  return sys.in_normalized_states(scale(v, 1.0 / p));
}

Vec boxtimes_state(const Vec& omega, const Vec& nu, const CompositeSystem& comp) {
  if (omega.size() != comp.sys_a.dim || nu.size() != comp.sys_b.dim)
    throw DimensionMismatch("boxtimes_state: local dimensions mismatch");
  return comp.state_product.apply(kron(omega, nu));
}

Vec boxtimes_effect(const Vec& e, const Vec& f, const CompositeSystem& comp) {
  if (e.size() != comp.sys_a.dim || f.size() != comp.sys_b.dim)
    throw DimensionMismatch("boxtimes_effect: local dimensions mismatch");
  return comp.effect_product.apply(kron(e, f));
}

namespace {

// Lift of a single-party dual vector against a fixed vector on the other
// party, as a joint effect coordinate vector.
Vec lift_effect(const Vec& e_a, const Vec& f_b, const CompositeSystem& comp) {
  return comp.effect_product.apply(kron(e_a, f_b));
}

Vec lift_state(const Vec& w_a, const Vec& n_b, const CompositeSystem& comp) {
  return comp.state_product.apply(kron(w_a, n_b));
}

}  // namespace

SteeredVector conditional_state(const Vec& local_effect, Party effect_party,
                                const Vec& joint_state, const CompositeSystem& comp) {
  const GptSystem& target = effect_party == Party::B ? comp.sys_a : comp.sys_b;
  const GptSystem& source = effect_party == Party::B ? comp.sys_b : comp.sys_a;
  if (local_effect.size() != source.dim)
    throw DimensionMismatch("conditional_state: effect dimension mismatch");
  if (joint_state.size() != comp.joint.dim)
    throw DimensionMismatch("conditional_state: joint dimension mismatch");

  // Solve e_k(x) = (e_k [x] f)(omega) over the target's spanning effect set.
  std::vector<Vec> rows;
  Vec rhs;
  rows.reserve(target.effect_generators.size());
  for (const Vec& e : target.effect_generators) {
    rows.push_back(e);
    const Vec joint_eff = effect_party == Party::B ? lift_effect(e, local_effect, comp)
                                                   : lift_effect(local_effect, e, comp);
    rhs.push_back(dot(joint_eff, joint_state));
  }
  auto [x, resid] = least_squares(rows, rhs);
  if (resid > kTolNum * std::max(1.0, norm_inf(rhs)))
    throw SteeringClosureError("conditional_state: no local vector reproduces the pairing");
  SteeredVector out;
  out.system = effect_party == Party::B ? Party::A : Party::B;
  out.norm = dot(target.unit_effect, x);
  out.vector = std::move(x);
  return out;
}

SteeredVector conditional_effect(const Vec& local_state, Party state_party,
                                 const Vec& joint_effect, const CompositeSystem& comp) {
  const GptSystem& target = state_party == Party::B ? comp.sys_a : comp.sys_b;
  const GptSystem& source = state_party == Party::B ? comp.sys_b : comp.sys_a;
  if (local_state.size() != source.dim)
    throw DimensionMismatch("conditional_effect: state dimension mismatch");
  if (joint_effect.size() != comp.joint.dim)
    throw DimensionMismatch("conditional_effect: joint dimension mismatch");

  std::vector<Vec> rows;
  Vec rhs;
  rows.reserve(target.state_generators.size());
  for (const Vec& w : target.state_generators) {
    rows.push_back(w);
    const Vec joint_state = state_party == Party::B ? lift_state(w, local_state, comp)
                                                    : lift_state(local_state, w, comp);
    rhs.push_back(dot(joint_effect, joint_state));
  }
  auto [x, resid] = least_squares(rows, rhs);
  if (resid > kTolNum * std::max(1.0, norm_inf(rhs)))
    throw SteeringClosureError("conditional_effect: no local vector reproduces the pairing");
  SteeredVector out;
  out.system = state_party == Party::B ? Party::A : Party::B;
  // For effects, norm records the largest probability assigned to the
  // registered state generators.
  double sup = 0.0;
  for (const Vec& w : target.state_generators) sup = std::max(sup, dot(x, w));
  out.norm = sup;
  out.vector = std::move(x);
  return out;
}

bool CompositionReport::all_pass() const {
  return product_states_valid.pass && product_effects_valid.pass &&
         probability_factorization.pass && unit_factorization.pass && steering_closure.pass;
}

namespace {

bool joint_state_member(const CompositeSystem& comp, const Vec& v) {
  if (comp.joint.in_normalized_states) return comp.joint.in_normalized_states(v);
  // Polytopic fallback: convex membership against the joint generators.
  return convex_membership(v, comp.joint.state_generators).feasible;
}

bool joint_effect_member(const CompositeSystem& comp, const Vec& e) {
  if (comp.joint.in_effects) return comp.joint.in_effects(e);
  return conic_membership(e, comp.joint.effect_generators).feasible;
}

void track(CompositionItem& item, bool ok, double residual, const std::string& what) {
  item.worst_residual = std::max(item.worst_residual, residual);
  if (!ok && item.pass) {
    item.pass = false;
    item.detail = what;
  }
}

}  // namespace

CompositionReport validate_composition(const CompositeSystem& comp) {
  CompositionReport rep;

  // Item 1: product states/effects are valid members of the joint sets and
  // independent experiments produce factorized statistics.
  for (std::size_t i = 0; i < comp.sys_a.state_generators.size(); ++i) {
    for (std::size_t j = 0; j < comp.sys_b.state_generators.size(); ++j) {
      const Vec prod =
          boxtimes_state(comp.sys_a.state_generators[i], comp.sys_b.state_generators[j], comp);
      const bool ok = joint_state_member(comp, prod);
      track(rep.product_states_valid, ok, ok ? 0.0 : 1.0,
            "product state (" + std::to_string(i) + "," + std::to_string(j) +
                ") is not a valid joint state");
    }
  }
  for (std::size_t i = 0; i < comp.sys_a.effect_generators.size(); ++i) {
    for (std::size_t j = 0; j < comp.sys_b.effect_generators.size(); ++j) {
      const Vec prod =
          boxtimes_effect(comp.sys_a.effect_generators[i], comp.sys_b.effect_generators[j], comp);
      const bool ok = joint_effect_member(comp, prod);
      track(rep.product_effects_valid, ok, ok ? 0.0 : 1.0,
            "product effect (" + std::to_string(i) + "," + std::to_string(j) +
                ") is not a valid joint effect");
    }
  }
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators)
      for (const Vec& w : comp.sys_a.state_generators)
        for (const Vec& n : comp.sys_b.state_generators) {
          const double lhs = dot(boxtimes_effect(e, f, comp), boxtimes_state(w, n, comp));
          const double rhs = dot(e, w) * dot(f, n);
          const double resid = std::fabs(lhs - rhs);
          track(rep.probability_factorization, resid <= kTolNum, resid,
                "independent statistics fail to factorize");
        }

  // Item 2: the joint unit is the product of the local units.
  {
    const Vec uu = boxtimes_effect(comp.sys_a.unit_effect, comp.sys_b.unit_effect, comp);
    const double resid = norm_inf(sub(uu, comp.joint.unit_effect));
    track(rep.unit_factorization, resid <= kTolNum, resid,
          "u_A [x] u_B differs from the joint unit");
  }

  // Item 3: closure under steering, in both directions and for both the
  // state and the effect side.
  for (const Vec& w : comp.joint.state_generators) {
    for (const Vec& f : comp.sys_b.effect_generators) {
      try {
        const SteeredVector sv = conditional_state(f, Party::B, w, comp);
        const bool ok = in_subnormalized_states(comp.sys_a, sv.vector);
        track(rep.steering_closure, ok, ok ? 0.0 : 1.0,
              "conditioning a joint state on a B effect leaves the A state set");
      } catch (const SteeringClosureError&) {
        track(rep.steering_closure, false, 1.0, "steering pairing inconsistent (A side)");
      }
    }
    for (const Vec& e : comp.sys_a.effect_generators) {
      try {
        const SteeredVector sv = conditional_state(e, Party::A, w, comp);
        const bool ok = in_subnormalized_states(comp.sys_b, sv.vector);
        track(rep.steering_closure, ok, ok ? 0.0 : 1.0,
              "conditioning a joint state on an A effect leaves the B state set");
      } catch (const SteeringClosureError&) {
        track(rep.steering_closure, false, 1.0, "steering pairing inconsistent (B side)");
      }
    }
  }
  for (const Vec& ejoint : comp.joint.effect_generators) {
    for (const Vec& n : comp.sys_b.state_generators) {
      try {
        const SteeredVector sv = conditional_effect(n, Party::B, ejoint, comp);
        const bool ok = comp.sys_a.in_effects ? comp.sys_a.in_effects(sv.vector)
                                              : conic_membership(sv.vector,
                                                                 comp.sys_a.effect_generators)
                                                    .feasible;
        track(rep.steering_closure, ok, ok ? 0.0 : 1.0,
              "conditioning a joint effect on a B state leaves the A effect set");
      } catch (const SteeringClosureError&) {
        track(rep.steering_closure, false, 1.0, "effect steering pairing inconsistent");
      }
    }
  }
  return rep;
}

bool is_tomographically_local(const CompositeSystem& comp) {
  const Subspace joint_span = span_basis(comp.joint.state_generators);
  const bool by_dimension = joint_span.dim() == comp.sys_a.dim * comp.sys_b.dim;

  // Cross-check: the annihilator of the product-effect span must be trivial.
  std::vector<Vec> product_effects;
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators)
      product_effects.push_back(boxtimes_effect(e, f, comp));
  const Subspace hs = annihilator(span_basis(product_effects));
  return by_dimension && hs.dim() == 0;
}

namespace {

nlohmann::json vecs_to_json(const std::vector<Vec>& vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Vec& v : vs) arr.push_back(v);
  return arr;
}

std::vector<Vec> vecs_from_json(const nlohmann::json& j) {
  std::vector<Vec> out;
  for (const auto& item : j) out.push_back(item.get<Vec>());
  return out;
}

nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const nlohmann::json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  return m;
}

}  // namespace

nlohmann::json system_to_json(const GptSystem& sys) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["name"] = sys.name;
  j["kind"] = sys.kind;
  j["dim"] = sys.dim;
  j["labels"] = sys.labels;
  j["state_generators"] = vecs_to_json(sys.state_generators);
  j["effect_generators"] = vecs_to_json(sys.effect_generators);
  j["unit_effect"] = sys.unit_effect;
  j["canonical_state_basis"] = vecs_to_json(sys.canonical_state_basis);
  j["canonical_effect_basis"] = vecs_to_json(sys.canonical_effect_basis);
  return j;
}

GptSystem system_from_json(const nlohmann::json& j) {
  GptSystem sys;
  sys.name = j.at("name").get<std::string>();
  sys.kind = j.at("kind").get<std::string>();
  sys.dim = j.at("dim").get<std::size_t>();
  sys.labels = j.value("labels", std::vector<std::string>{});
  sys.state_generators = vecs_from_json(j.at("state_generators"));
  sys.effect_generators = vecs_from_json(j.at("effect_generators"));
  sys.unit_effect = j.at("unit_effect").get<Vec>();
  if (j.contains("canonical_state_basis"))
    sys.canonical_state_basis = vecs_from_json(j["canonical_state_basis"]);
  if (j.contains("canonical_effect_basis"))
    sys.canonical_effect_basis = vecs_from_json(j["canonical_effect_basis"]);
  return sys;
}

nlohmann::json composite_to_json(const CompositeSystem& comp) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["name"] = comp.name;
  j["kind"] = comp.kind;
  j["sys_a"] = system_to_json(comp.sys_a);
  j["sys_b"] = system_to_json(comp.sys_b);
  j["joint"] = system_to_json(comp.joint);
  j["state_product"] = mat_to_json(comp.state_product);
  j["effect_product"] = mat_to_json(comp.effect_product);
  if (comp.discrimination_measurement) {
    j["discrimination_measurement"] = {comp.discrimination_measurement->first,
                                       comp.discrimination_measurement->second};
  }
  return j;
}

CompositeSystem composite_from_json(const nlohmann::json& j) {
  CompositeSystem comp;
  comp.name = j.at("name").get<std::string>();
  comp.kind = j.at("kind").get<std::string>();
  comp.sys_a = system_from_json(j.at("sys_a"));
  comp.sys_b = system_from_json(j.at("sys_b"));
  comp.joint = system_from_json(j.at("joint"));
  comp.state_product = mat_from_json(j.at("state_product"));
  comp.effect_product = mat_from_json(j.at("effect_product"));
  if (j.contains("discrimination_measurement")) {
    comp.discrimination_measurement = {j["discrimination_measurement"][0].get<Vec>(),
                                       j["discrimination_measurement"][1].get<Vec>()};
  }
  return comp;
}

}  // namespace gpttomo
