#include "gpttomo/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "gpttomo/simplex.hpp"
#include "gpttomo/theories.hpp"

namespace gpttomo {

namespace {

const char* method_name(SepMethod m) {
  switch (m) {
    case SepMethod::lp: return "lp";
    case SepMethod::ppt_embed: return "ppt-embed";
    default: return "cone-predicate";
  }
}

// Products of local extreme states, with their factor indices.
struct ProductSet {
  std::vector<Vec> products;
  std::vector<std::pair<std::size_t, std::size_t>> factors;
};

ProductSet product_state_set(const CompositeSystem& comp) {
  ProductSet out;
  for (std::size_t i = 0; i < comp.sys_a.state_generators.size(); ++i)
    for (std::size_t j = 0; j < comp.sys_b.state_generators.size(); ++j) {
      out.products.push_back(
          boxtimes_state(comp.sys_a.state_generators[i], comp.sys_b.state_generators[j], comp));
      out.factors.emplace_back(i, j);
    }
  return out;
}

SepCertificate certificate_from_weights(const CompositeSystem& comp, const ProductSet& set,
                                        const std::vector<double>& weights) {
  SepCertificate cert;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 1e-12) continue;
    cert.weights.push_back(weights[k]);
    cert.states_a.push_back(comp.sys_a.state_generators[set.factors[k].first]);
    cert.states_b.push_back(comp.sys_b.state_generators[set.factors[k].second]);
  }
  return cert;
}

bool is_valid_joint_state(const CompositeSystem& comp, const Vec& v) {
  if (comp.joint.in_normalized_states) return comp.joint.in_normalized_states(v);
  return convex_membership(v, comp.joint.state_generators).feasible;
}

}  // namespace

std::optional<SepCertificate> rebit_product_decomposition(const Vec& omega) {
  if (omega.size() != 10) throw DimensionMismatch("rebit_product_decomposition: want 10 coords");
  if (std::fabs(omega[9]) > kTolNum) return std::nullopt;

  const Mat rho = iota_embed(omega);
  auto [eigs, vectors] = symmetric_eigensystem(rho);
  if (eigs.front() < -kTolPsd) return std::nullopt;  // not a state

  // Subnormalized pure decomposition rho = sum_i x_i x_i^T.
  std::vector<Vec> xs;
  for (std::size_t i = 0; i < 4; ++i) {
    if (eigs[i] <= 1e-12) continue;
    Vec x(4);
    for (std::size_t r = 0; r < 4; ++r) x[r] = std::sqrt(eigs[i]) * vectors(r, i);
    xs.push_back(x);
  }
  const std::size_t k = xs.size();

  // Quadratic form of the holistic word over the decomposition. Its trace is
  // the holistic coefficient, which vanishes here, so an orthogonal remixing
  // can zero the whole diagonal; vectors with zero diagonal entry factor into
  // products.
  Vec yy(10, 0.0);
  yy[9] = 1.0;
  const Mat y_word = two_rebit_effect_matrix(yy);
  Mat q(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) q(i, j) = dot(xs[i], y_word.apply(xs[j]));

  std::vector<bool> fixed(k, false);
  for (std::size_t step = 0; step + 1 < k; ++step) {
    std::size_t ipos = k, ineg = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (fixed[i]) continue;
      if (ipos == k || q(i, i) > q(ipos, ipos)) ipos = i;
      if (ineg == k || q(i, i) < q(ineg, ineg)) ineg = i;
    }
    if (q(ipos, ipos) <= 1e-12 && q(ineg, ineg) >= -1e-12) break;  // already zero
    const double a = q(ipos, ipos), d = q(ineg, ineg), b = q(ipos, ineg);
    // Zero the ipos entry: a + 2bt + dt^2 = 0 has real roots since ad < 0.
    const double disc = std::sqrt(std::max(0.0, b * b - a * d));
    const double t1 = (-b + disc) / d, t2 = (-b - disc) / d;
    const double t = std::fabs(t1) <= std::fabs(t2) ? t1 : t2;
    const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
    // Remix the two vectors and update the form.
    for (std::size_t r = 0; r < 4; ++r) {
      const double xp = xs[ipos][r], xq = xs[ineg][r];
      xs[ipos][r] = c * xp + s * xq;
      xs[ineg][r] = -s * xp + c * xq;
    }
    for (std::size_t r = 0; r < k; ++r) {
      const double qp = q(r, ipos), qn = q(r, ineg);
      q(r, ipos) = c * qp + s * qn;
      q(r, ineg) = -s * qp + c * qn;
    }
    for (std::size_t r = 0; r < k; ++r) {
      const double qp = q(ipos, r), qn = q(ineg, r);
      q(ipos, r) = c * qp + s * qn;
      q(ineg, r) = -s * qp + c * qn;
    }
    fixed[ipos] = true;
  }

  // Factor each vector as a product of local unit vectors.
  SepCertificate cert;
  for (const Vec& x : xs) {
    const double weight = dot(x, x);
    if (weight <= 1e-12) continue;
    Vec psi = scale(x, 1.0 / std::sqrt(weight));
    Mat m2(2, 2);
    m2(0, 0) = psi[0];
    m2(0, 1) = psi[1];
    m2(1, 0) = psi[2];
    m2(1, 1) = psi[3];
    const Mat mmt = m2 * m2.transposed();
    auto [ev, evec] = symmetric_eigensystem(mmt);
    Vec alpha = {evec(0, 1), evec(1, 1)};  // dominant left factor
    Vec beta = m2.transposed().apply(alpha);
    const double bn = norm2(beta);
    if (bn <= 1e-12) continue;
    beta = scale(beta, 1.0 / bn);
    cert.weights.push_back(weight);
    cert.states_a.push_back({1.0, 2.0 * alpha[0] * alpha[1], alpha[0] * alpha[0] - alpha[1] * alpha[1]});
    cert.states_b.push_back({1.0, 2.0 * beta[0] * beta[1], beta[0] * beta[0] - beta[1] * beta[1]});
  }

  // The construction is exact for valid inputs; guard against boundary noise.
  Vec acc(10, 0.0);
  const auto& site = PauliStringSpace::rebit_chain(1);
  const auto& pair = PauliStringSpace::two_rebit();
  for (std::size_t i = 0; i < cert.weights.size(); ++i)
    acc = add(acc, scale(tensor_coords(site, cert.states_a[i], site, cert.states_b[i], pair),
                         cert.weights[i]));
  if (norm_inf(sub(acc, omega)) > 1e-8) return std::nullopt;
  return cert;
}

SepVerdict is_separable_state(const Vec& omega, const CompositeSystem& comp,
                              bool want_certificate) {
  SepVerdict out;
  if (omega.size() != comp.joint.dim)
    throw DimensionMismatch("is_separable_state: joint dimension mismatch");
  if (norm_inf(omega) <= kTolNum) {  // the zero vector belongs to the state set
    out.separable = true;
    out.certificate = SepCertificate{};
    return out;
  }

  if (comp.kind == "polytopic" || comp.kind == "bct") {
    const ProductSet set = product_state_set(comp);
    const MembershipResult mem = convex_membership(omega, set.products);
    out.separable = mem.feasible;
    out.method = SepMethod::lp;
    if (mem.feasible && want_certificate)
      out.certificate = certificate_from_weights(comp, set, mem.weights);
    return out;
  }
  if (comp.kind == "two-rebit") {
    out.method = SepMethod::ppt_embed;
    out.separable =
        std::fabs(omega[9]) <= kTolNum && ppt_separable_2x2(iota_embed(omega));
    if (out.separable && want_certificate) out.certificate = rebit_product_decomposition(omega);
    return out;
  }
  if (comp.kind == "two-qubit") {
    out.method = SepMethod::ppt_embed;
    out.separable = ppt_separable_qubit_pair(omega);
    return out;
  }
  throw UnsupportedTheoryError("is_separable_state: no separability route for kind " +
                               comp.kind);
}

std::pair<bool, double> has_tnl_entanglement(const Vec& omega,
                                             const TomographicDecomposition& dec,
                                             const CompositeSystem& comp) {
  const Vec h = dec.pi_tnl.apply(omega);
  double norm = 0.0;
  if (comp.kind == "two-rebit")
    norm = iota_embed(h).max_abs();
  else
    norm = norm_inf(h);
  return {norm > kTolNum, norm};
}

std::pair<bool, std::optional<SepCertificate>> has_tl_entanglement(
    const Vec& omega, const CompositeSystem& comp, const TomographicDecomposition& dec,
    bool want_certificate) {
  const Vec local_part = dec.pi_tl.apply(omega);
  if (!is_valid_joint_state(comp, local_part)) return {true, std::nullopt};
  const SepVerdict verdict = is_separable_state(local_part, comp, want_certificate);
  return {!verdict.separable, verdict.certificate};
}

EntanglementReport classify(const Vec& omega, const CompositeSystem& comp,
                            const TomographicDecomposition& dec, bool want_certificate) {
  EntanglementReport rep;
  const SepVerdict sep = is_separable_state(omega, comp, want_certificate);
  rep.separable = sep.separable;
  rep.method = sep.method;
  std::tie(rep.has_tnl, rep.tnl_component_norm) = has_tnl_entanglement(omega, dec, comp);
  if (rep.separable) {
    rep.has_tl = false;
    rep.certificate = sep.certificate;
    return rep;
  }
  auto [tl, cert] = has_tl_entanglement(omega, comp, dec, want_certificate);
  rep.has_tl = tl;
  rep.certificate = std::move(cert);
  // When the local-span part is not even a valid state, the verdict came
  // from the state-set predicate rather than a separability search.
  if (rep.has_tl && !is_valid_joint_state(comp, dec.pi_tl.apply(omega)))
    rep.method = SepMethod::cone_predicate;
  return rep;
}

bool is_separable_effect(const Vec& effect, const CompositeSystem& comp) {
  if (effect.size() != comp.joint.dim)
    throw DimensionMismatch("is_separable_effect: joint dimension mismatch");
  std::vector<Vec> products;
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators) {
      Vec p = boxtimes_effect(e, f, comp);
      if (norm_inf(p) > 1e-12) products.push_back(std::move(p));
    }
  return conic_membership(effect, products).feasible;
}

nlohmann::json entanglement_report_to_json(const EntanglementReport& rep) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["separable"] = rep.separable;
  j["has_tl"] = rep.has_tl;
  j["has_tnl"] = rep.has_tnl;
  j["tnl_component_norm"] = rep.tnl_component_norm;
  j["method"] = method_name(rep.method);
  if (rep.certificate) {
    nlohmann::json cert;
    cert["weights"] = rep.certificate->weights;
    nlohmann::json sa = nlohmann::json::array(), sb = nlohmann::json::array();
    for (const Vec& v : rep.certificate->states_a) sa.push_back(v);
    for (const Vec& v : rep.certificate->states_b) sb.push_back(v);
    cert["states_a"] = sa;
    cert["states_b"] = sb;
    j["certificate"] = cert;
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

}  // namespace gpttomo
