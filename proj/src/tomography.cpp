#include "gpttomo/tomography.hpp"

#include <algorithm>
#include <cmath>

namespace gpttomo {

namespace {

std::vector<Vec> product_state_list(const CompositeSystem& comp) {
  std::vector<Vec> out;
  out.reserve(comp.sys_a.state_generators.size() * comp.sys_b.state_generators.size());
  for (const Vec& w : comp.sys_a.state_generators)
    for (const Vec& n : comp.sys_b.state_generators) out.push_back(boxtimes_state(w, n, comp));
  return out;
}

std::vector<Vec> product_effect_list(const CompositeSystem& comp) {
  std::vector<Vec> out;
  out.reserve(comp.sys_a.effect_generators.size() * comp.sys_b.effect_generators.size());
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators) out.push_back(boxtimes_effect(e, f, comp));
  return out;
}

}  // namespace

std::pair<Subspace, Subspace> tl_subspaces(const CompositeSystem& comp) {
  return {span_basis(product_state_list(comp)), span_basis(product_effect_list(comp))};
}

std::pair<Subspace, Subspace> holistic_subspaces(const CompositeSystem& comp) {
  auto [states, effects] = tl_subspaces(comp);
  return {annihilator(effects), annihilator(states)};
}

Mat build_pi_tl(const CompositeSystem& comp) {
  auto [ab_tensor, ab_tensor_dual] = tl_subspaces(comp);
  Subspace h_state = annihilator(ab_tensor_dual);
  if (ab_tensor.ambient_dim == 0) ab_tensor.ambient_dim = comp.joint.dim;
  if (h_state.ambient_dim == 0) h_state.ambient_dim = comp.joint.dim;
  return oblique_projector(ab_tensor, h_state);
}

Mat effect_state_identity(const std::vector<Vec>& states, const std::vector<Vec>& effects) {
  if (states.empty() || states.size() != effects.size())
    throw RankError("effect_state_identity: need equally sized state/effect bases");
  const std::size_t d = states[0].size();
  if (states.size() != d) throw RankError("effect_state_identity: bases must span the space");
  // Pairing matrix P_kj = e_j(w_k); coefficients c = (P^T)^{-1} give
  // sum_ij c_ij w_i e_j^T = identity.
  std::vector<Vec> prows(d, Vec(d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) prows[k][j] = dot(effects[j], states[k]);
  std::vector<Vec> duals = dual_basis(prows);  // row i: c_ij with sum_j c_ij P_kj = delta_ik
  Mat out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // c_ij solves sum_j c_ij e_j(w_k) = delta_ik, i.e. c rows are the dual
      // vectors of the pairing rows.
      const double c = duals[i][j];
      if (c == 0.0) continue;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) out(r, s) += c * states[i][r] * effects[j][s];
    }
  return out;
}

Mat build_pi_tl_effect_state(const CompositeSystem& comp, const std::vector<Vec>& a_states,
                             const std::vector<Vec>& a_effects, const std::vector<Vec>& b_states,
                             const std::vector<Vec>& b_effects) {
  const std::size_t da = comp.sys_a.dim, db = comp.sys_b.dim;
  if (a_states.size() != da || a_effects.size() != da || b_states.size() != db ||
      b_effects.size() != db)
    throw RankError("build_pi_tl_effect_state: bases must match the local dimensions");

  auto coefficients = [](const std::vector<Vec>& states, const std::vector<Vec>& effects) {
    const std::size_t d = states.size();
    std::vector<Vec> prows(d, Vec(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) prows[i][j] = dot(effects[j], states[i]);
    return dual_basis(prows);  // row i = coefficients expanding t_i over the effects
  };
  const std::vector<Vec> ca = coefficients(a_states, a_effects);
  const std::vector<Vec> cb = coefficients(b_states, b_effects);

  const std::size_t n = comp.joint.dim;
  Mat out(n, n);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < db; ++k) {
      const Vec prod_state = boxtimes_state(a_states[i], b_states[k], comp);
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t l = 0; l < db; ++l) {
          const double c = ca[i][j] * cb[k][l];
          if (c == 0.0) continue;
          const Vec prod_effect = boxtimes_effect(a_effects[j], b_effects[l], comp);
          for (std::size_t r = 0; r < n; ++r) {
            if (prod_state[r] == 0.0) continue;
            const double w = c * prod_state[r];
            for (std::size_t s = 0; s < n; ++s) out(r, s) += w * prod_effect[s];
          }
        }
    }
  return out;
}

Mat build_pi_tl_effect_state(const CompositeSystem& comp) {
  return build_pi_tl_effect_state(comp, comp.sys_a.canonical_state_basis,
                                  comp.sys_a.canonical_effect_basis,
                                  comp.sys_b.canonical_state_basis,
                                  comp.sys_b.canonical_effect_basis);
}

Mat build_pi_tnl(const CompositeSystem& comp) {
  return Mat::identity(comp.joint.dim) - build_pi_tl(comp);
}

Mat build_pi_tnl_hourglass(const CompositeSystem& comp, const std::vector<Vec>& product_basis,
                           const std::vector<Vec>& holistic_basis) {
  const std::size_t n = comp.joint.dim;
  if (product_basis.size() + holistic_basis.size() != n)
    throw RankError("build_pi_tnl_hourglass: basis does not span the joint space");
  std::vector<Vec> full = product_basis;
  full.insert(full.end(), holistic_basis.begin(), holistic_basis.end());
  const std::vector<Vec> duals = dual_basis(full);
  Mat out(n, n);
  for (std::size_t k = 0; k < holistic_basis.size(); ++k) {
    const Vec& h = holistic_basis[k];
    const Vec& hd = duals[product_basis.size() + k];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) out(r, s) += h[r] * hd[s];
  }
  return out;
}

Mat build_pi_tnl_hourglass(const CompositeSystem& comp) {
  auto [ab_tensor, ab_tensor_dual] = tl_subspaces(comp);
  const Subspace h_state = annihilator(ab_tensor_dual);
  return build_pi_tnl_hourglass(comp, ab_tensor.basis, h_state.basis);
}

TomographicDecomposition decompose(const CompositeSystem& comp) {
  TomographicDecomposition dec;
  std::tie(dec.ab_tensor, dec.ab_tensor_dual) = tl_subspaces(comp);
  if (dec.ab_tensor.ambient_dim == 0) dec.ab_tensor.ambient_dim = comp.joint.dim;
  if (dec.ab_tensor_dual.ambient_dim == 0) dec.ab_tensor_dual.ambient_dim = comp.joint.dim;
  dec.h_state = annihilator(dec.ab_tensor_dual);
  dec.h_effect = annihilator(dec.ab_tensor);
  dec.pi_tl = oblique_projector(dec.ab_tensor, dec.h_state);
  dec.pi_tnl = Mat::identity(comp.joint.dim) - dec.pi_tl;
  return dec;
}

bool ProjectorLawReport::all_pass() const {
  return std::all_of(laws.begin(), laws.end(), [](const ProjectorLaw& l) { return l.pass; });
}

const ProjectorLaw* ProjectorLawReport::find(const std::string& name) const {
  for (const ProjectorLaw& l : laws)
    if (l.name == name) return &l;
  return nullptr;
}

ProjectorLawReport verify_projector_laws(const TomographicDecomposition& dec,
                                         const CompositeSystem& comp) {
  ProjectorLawReport rep;
  auto law = [&rep](const std::string& name, double residual) {
    rep.laws.push_back({name, residual <= kTolNum, residual});
  };

  const Mat& p = dec.pi_tl;
  const Mat& q = dec.pi_tnl;
  const std::size_t n = comp.joint.dim;

  law("pi_tl_idempotent", (p * p - p).max_abs());
  law("pi_tnl_idempotent", (q * q - q).max_abs());
  law("complementarity", (p + q - Mat::identity(n)).max_abs());

  const Vec& u = comp.joint.unit_effect;
  law("unit_preserved_by_pi_tl", norm_inf(sub(p.apply_transposed(u), u)));
  law("unit_annihilates_pi_tnl", norm_inf(q.apply_transposed(u)));

  double fix_states = 0.0;
  for (const Vec& w : comp.sys_a.state_generators)
    for (const Vec& nu : comp.sys_b.state_generators) {
      const Vec prod = boxtimes_state(w, nu, comp);
      fix_states = std::max(fix_states, norm_inf(sub(p.apply(prod), prod)));
    }
  law("fixes_product_states", fix_states);

  double fix_effects = 0.0;
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators) {
      const Vec prod = boxtimes_effect(e, f, comp);
      fix_effects = std::max(fix_effects, norm_inf(sub(p.apply_transposed(prod), prod)));
    }
  law("fixes_product_effects", fix_effects);

  // Nonzero states keep a nonzero local-span component: the unit value of a
  // normalized generator survives the projection.
  double survive = 1.0;
  for (const Vec& w : comp.joint.state_generators)
    survive = std::min(survive, norm_inf(p.apply(w)));
  law("nonzero_states_survive", survive > kTolNum ? 0.0 : 1.0);

  // pi_tnl kills a generator iff the generator lies in the product span.
  double kernel_resid = 0.0;
  for (const Vec& w : comp.joint.state_generators) {
    const bool killed = norm_inf(q.apply(w)) <= kTolNum;
    const bool in_span = distance_to_span(dec.ab_tensor, w) <= kTolNum;
    if (killed != in_span) kernel_resid = 1.0;
  }
  law("pi_tnl_kernel_is_product_span", kernel_resid);

  // Dual actions: e o pi_tl lands in the product-effect span, e o pi_tnl in
  // the holistic effect subspace.
  double dual_tl = 0.0, dual_tnl = 0.0;
  for (const Vec& e : comp.joint.effect_generators) {
    dual_tl = std::max(dual_tl, distance_to_span(dec.ab_tensor_dual, p.apply_transposed(e)));
    dual_tnl = std::max(dual_tnl, distance_to_span(dec.h_effect, q.apply_transposed(e)));
  }
  law("dual_pi_tl_into_product_effect_span", dual_tl);
  law("dual_pi_tnl_into_h_effect", dual_tnl);

  law("dim_split_states",
      dec.ab_tensor.dim() + dec.h_state.dim() == n ? 0.0 : 1.0);
  law("dim_split_effects",
      dec.ab_tensor_dual.dim() + dec.h_effect.dim() == n ? 0.0 : 1.0);

  return rep;
}

Mat splitting_inner_product(const TomographicDecomposition& dec) {
  // With M = [product basis | holistic basis] as columns, the Gram matrix
  // G = M^{-T} M^{-1} makes the two blocks orthonormal and in particular
  // orthogonal to one another.
  const std::size_t n = dec.ab_tensor.ambient_dim ? dec.ab_tensor.ambient_dim
                                                  : dec.h_state.ambient_dim;
  std::vector<Vec> cols = dec.ab_tensor.basis;
  cols.insert(cols.end(), dec.h_state.basis.begin(), dec.h_state.basis.end());
  if (cols.size() != n) throw RankError("splitting_inner_product: basis does not span");
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  Mat minv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    Vec rhs(n, 0.0);
    rhs[c] = 1.0;
    const Vec col = solve_linear(m, rhs);
    for (std::size_t i = 0; i < n; ++i) minv(i, c) = col[i];
  }
  Mat gram = minv.transposed() * minv;
  // The induced Riesz map must carry the holistic state basis into the
  // holistic effect subspace.
  for (const Vec& h : dec.h_state.basis)
    if (distance_to_span(dec.h_effect, gram.apply(h)) > kTolNum)
      throw LinalgError("splitting_inner_product: Riesz image leaves the holistic effect space");
  return gram;
}

nlohmann::json projector_law_report_to_json(const ProjectorLawReport& rep) {
  nlohmann::json laws = nlohmann::json::array();
  for (const ProjectorLaw& l : rep.laws)
    laws.push_back({{"name", l.name}, {"pass", l.pass}, {"residual", l.residual}});
  return {{"schema", kSchemaVersion}, {"laws", laws}, {"all_pass", rep.all_pass()}};
}

}  // namespace gpttomo
