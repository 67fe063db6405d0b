#include "gpttomo/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gpttomo/rng.hpp"
#include "gpttomo/simplex.hpp"
#include "gpttomo/theories.hpp"

namespace gpttomo {

double BellTable::p(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
  return probs[((x * n_inputs_b + y) * n_outputs_a + a) * n_outputs_b + b];
}

double& BellTable::at(std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
  return probs[((x * n_inputs_b + y) * n_outputs_a + a) * n_outputs_b + b];
}

void BellTable::validate() const {
  for (std::size_t x = 0; x < n_inputs_a; ++x)
    for (std::size_t y = 0; y < n_inputs_b; ++y) {
      double total = 0.0;
      for (std::size_t a = 0; a < n_outputs_a; ++a)
        for (std::size_t b = 0; b < n_outputs_b; ++b) {
          const double v = p(a, b, x, y);
          if (v < -kTolNum) throw GptError("bell table: negative probability");
          total += v;
        }
      if (std::fabs(total - 1.0) > kTolNum)
        throw GptError("bell table: outcome slice does not sum to one");
    }
  // No-signalling: marginals must not depend on the far input.
  for (std::size_t x = 0; x < n_inputs_a; ++x)
    for (std::size_t a = 0; a < n_outputs_a; ++a) {
      double ref = 0.0;
      for (std::size_t b = 0; b < n_outputs_b; ++b) ref += p(a, b, x, 0);
      for (std::size_t y = 1; y < n_inputs_b; ++y) {
        double m = 0.0;
        for (std::size_t b = 0; b < n_outputs_b; ++b) m += p(a, b, x, y);
        if (std::fabs(m - ref) > kTolNum) throw GptError("bell table: signalling A marginal");
      }
    }
  for (std::size_t y = 0; y < n_inputs_b; ++y)
    for (std::size_t b = 0; b < n_outputs_b; ++b) {
      double ref = 0.0;
      for (std::size_t a = 0; a < n_outputs_a; ++a) ref += p(a, b, 0, y);
      for (std::size_t x = 1; x < n_inputs_a; ++x) {
        double m = 0.0;
        for (std::size_t a = 0; a < n_outputs_a; ++a) m += p(a, b, x, y);
        if (std::fabs(m - ref) > kTolNum) throw GptError("bell table: signalling B marginal");
      }
    }
}

namespace {

void check_measurement(const Measurement& meas, const Vec& unit) {
  Vec total(unit.size(), 0.0);
  for (const Vec& e : meas) total = add(total, e);
  if (norm_inf(sub(total, unit)) > kTolNum)
    throw GptError("measurement effects do not sum to the unit");
}

}  // namespace

BellTable bell_table(const Vec& omega, const std::vector<Measurement>& a_meas,
                     const std::vector<Measurement>& b_meas, const CompositeSystem& comp) {
  BellTable t;
  t.n_inputs_a = a_meas.size();
  t.n_inputs_b = b_meas.size();
  t.n_outputs_a = a_meas.empty() ? 0 : a_meas[0].size();
  t.n_outputs_b = b_meas.empty() ? 0 : b_meas[0].size();
  for (const Measurement& m : a_meas) {
    if (m.size() != t.n_outputs_a) throw GptError("bell_table: ragged A measurements");
    check_measurement(m, comp.sys_a.unit_effect);
  }
  for (const Measurement& m : b_meas) {
    if (m.size() != t.n_outputs_b) throw GptError("bell_table: ragged B measurements");
    check_measurement(m, comp.sys_b.unit_effect);
  }
  t.probs.assign(t.n_inputs_a * t.n_inputs_b * t.n_outputs_a * t.n_outputs_b, 0.0);
  for (std::size_t x = 0; x < t.n_inputs_a; ++x)
    for (std::size_t y = 0; y < t.n_inputs_b; ++y)
      for (std::size_t a = 0; a < t.n_outputs_a; ++a)
        for (std::size_t b = 0; b < t.n_outputs_b; ++b)
          t.at(a, b, x, y) = dot(boxtimes_effect(a_meas[x][a], b_meas[y][b], comp), omega);
  return t;
}

namespace {

// Reduced coordinates of a no-signalling table: one-party marginals for all
// but the last outcome, joint probabilities for all but the last outcomes,
// and a normalization entry.
struct ReducedRows {
  std::size_t nx, ny, ka, kb;
  std::size_t size() const {
    return nx * (ka - 1) + ny * (kb - 1) + nx * ny * (ka - 1) * (kb - 1) + 1;
  }
  Vec from_table(const BellTable& t) const {
    Vec v;
    v.reserve(size());
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t a = 0; a + 1 < ka; ++a) {
        double m = 0.0;
        for (std::size_t b = 0; b < kb; ++b) m += t.p(a, b, x, 0);
        v.push_back(m);
      }
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t b = 0; b + 1 < kb; ++b) {
        double m = 0.0;
        for (std::size_t a = 0; a < ka; ++a) m += t.p(a, b, 0, y);
        v.push_back(m);
      }
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t a = 0; a + 1 < ka; ++a)
          for (std::size_t b = 0; b + 1 < kb; ++b) v.push_back(t.p(a, b, x, y));
    v.push_back(1.0);
    return v;
  }
  Vec from_strategy(const std::vector<int>& sa, const std::vector<int>& sb) const {
    Vec v;
    v.reserve(size());
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t a = 0; a + 1 < ka; ++a)
        v.push_back(sa[x] == static_cast<int>(a) ? 1.0 : 0.0);
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t b = 0; b + 1 < kb; ++b)
        v.push_back(sb[y] == static_cast<int>(b) ? 1.0 : 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t a = 0; a + 1 < ka; ++a)
          for (std::size_t b = 0; b + 1 < kb; ++b)
            v.push_back(sa[x] == static_cast<int>(a) && sb[y] == static_cast<int>(b) ? 1.0
                                                                                     : 0.0);
    v.push_back(1.0);
    return v;
  }
};

// Splits the dual vector back into its blocks for strategy pricing.
struct DualView {
  const ReducedRows& rr;
  const Vec& y;
  double alice(std::size_t x, int a) const {
    if (a + 1 == static_cast<int>(rr.ka)) return 0.0;
    return y[x * (rr.ka - 1) + static_cast<std::size_t>(a)];
  }
  double bob(std::size_t yy, int b) const {
    if (b + 1 == static_cast<int>(rr.kb)) return 0.0;
    return y[rr.nx * (rr.ka - 1) + yy * (rr.kb - 1) + static_cast<std::size_t>(b)];
  }
  double joint(std::size_t x, std::size_t yy, int a, int b) const {
    if (a + 1 == static_cast<int>(rr.ka) || b + 1 == static_cast<int>(rr.kb)) return 0.0;
    const std::size_t base = rr.nx * (rr.ka - 1) + rr.ny * (rr.kb - 1);
    return y[base + ((x * rr.ny + yy) * (rr.ka - 1) + static_cast<std::size_t>(a)) * (rr.kb - 1) +
             static_cast<std::size_t>(b)];
  }
  double unit() const { return y.back(); }
};

double count_strategies_log(std::size_t outs, std::size_t ins) {
  return static_cast<double>(ins) * std::log2(static_cast<double>(outs));
}

}  // namespace

LhvModel lhv_membership(const BellTable& table) {
  table.validate();
  LhvModel model;
  const ReducedRows rr{table.n_inputs_a, table.n_inputs_b, table.n_outputs_a, table.n_outputs_b};
  PhaseOneSimplex lp(rr.from_table(table));

  std::vector<std::vector<int>> added_a, added_b;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  auto add_strategy = [&](const std::vector<int>& sa, const std::vector<int>& sb) {
    if (!seen.emplace(sa, sb).second) return false;
    lp.add_column(rr.from_strategy(sa, sb));
    added_a.push_back(sa);
    added_b.push_back(sb);
    return true;
  };

  const double log_total = count_strategies_log(rr.ka, rr.nx) + count_strategies_log(rr.kb, rr.ny);
  if (log_total <= 12.0) {
    // Enumerate every deterministic strategy pair.
    std::vector<std::vector<int>> alice_all, bob_all;
    std::vector<int> cur(rr.nx, 0);
    while (true) {
      alice_all.push_back(cur);
      std::size_t pos = 0;
      while (pos < rr.nx && ++cur[pos] == static_cast<int>(rr.ka)) cur[pos++] = 0;
      if (pos == rr.nx) break;
    }
    cur.assign(rr.ny, 0);
    while (true) {
      bob_all.push_back(cur);
      std::size_t pos = 0;
      while (pos < rr.ny && ++cur[pos] == static_cast<int>(rr.kb)) cur[pos++] = 0;
      if (pos == rr.ny) break;
    }
    for (const auto& sa : alice_all)
      for (const auto& sb : bob_all) add_strategy(sa, sb);
    lp.solve();
  } else {
    // Column generation. Enumerate the smaller side during pricing.
    const bool enumerate_bob =
        count_strategies_log(rr.kb, rr.ny) <= count_strategies_log(rr.ka, rr.nx);
    const double log_enum = enumerate_bob ? count_strategies_log(rr.kb, rr.ny)
                                          : count_strategies_log(rr.ka, rr.nx);
    if (log_enum > 21.0)
      throw GptError("lhv_membership: scenario too large for strategy enumeration");

    for (int a0 = 0; a0 < static_cast<int>(rr.ka); ++a0)
      for (int b0 = 0; b0 < static_cast<int>(rr.kb); ++b0)
        add_strategy(std::vector<int>(rr.nx, a0), std::vector<int>(rr.ny, b0));

    for (int round = 0; round < 2000; ++round) {
      lp.solve();
      if (lp.feasible(kTolLp)) break;
      const Vec duals = lp.duals();
      const DualView dv{rr, duals};

      // For a fixed strategy on the enumerated side, the other side
      // optimizes each input independently; keep the highest-value
      // candidates of the sweep and add them as a batch.
      using Candidate = std::pair<double, std::pair<std::vector<int>, std::vector<int>>>;
      std::vector<Candidate> top;
      const std::size_t batch = 12;
      const std::size_t enum_inputs = enumerate_bob ? rr.ny : rr.nx;
      const std::size_t enum_outs = enumerate_bob ? rr.kb : rr.ka;
      std::vector<int> senum(enum_inputs, 0);
      while (true) {
        double value = dv.unit();
        std::vector<int> sother(enumerate_bob ? rr.nx : rr.ny, 0);
        if (enumerate_bob) {
          for (std::size_t yy = 0; yy < rr.ny; ++yy) value += dv.bob(yy, senum[yy]);
          for (std::size_t x = 0; x < rr.nx; ++x) {
            double besta = -1e300;
            int arg = 0;
            for (int a = 0; a < static_cast<int>(rr.ka); ++a) {
              double va = dv.alice(x, a);
              for (std::size_t yy = 0; yy < rr.ny; ++yy) va += dv.joint(x, yy, a, senum[yy]);
              if (va > besta) {
                besta = va;
                arg = a;
              }
            }
            value += besta;
            sother[x] = arg;
          }
        } else {
          for (std::size_t x = 0; x < rr.nx; ++x) value += dv.alice(x, senum[x]);
          for (std::size_t yy = 0; yy < rr.ny; ++yy) {
            double bestb = -1e300;
            int arg = 0;
            for (int b = 0; b < static_cast<int>(rr.kb); ++b) {
              double vb = dv.bob(yy, b);
              for (std::size_t x = 0; x < rr.nx; ++x) vb += dv.joint(x, yy, senum[x], b);
              if (vb > bestb) {
                bestb = vb;
                arg = b;
              }
            }
            value += bestb;
            sother[yy] = arg;
          }
        }
        if (value > 1e-9 && (top.size() < batch || value > top.back().first)) {
          const auto sa = enumerate_bob ? sother : senum;
          const auto sb = enumerate_bob ? senum : sother;
          top.emplace_back(value, std::make_pair(sa, sb));
          std::sort(top.begin(), top.end(),
                    [](const Candidate& l, const Candidate& r) { return l.first > r.first; });
          if (top.size() > batch) top.pop_back();
        }
        std::size_t pos = 0;
        while (pos < enum_inputs && ++senum[pos] == static_cast<int>(enum_outs)) senum[pos++] = 0;
        if (pos == enum_inputs) break;
      }
      if (top.empty()) break;  // certified: no strategy improves the duals
      bool progressed = false;
      for (const Candidate& c : top)
        progressed = add_strategy(c.second.first, c.second.second) || progressed;
      if (!progressed) break;  // only known strategies price in; give up
    }
  }

  model.feasible = lp.feasible(kTolLp);
  if (model.feasible) {
    const std::vector<double> w = lp.solution();
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] <= 1e-12) continue;
      model.weights.push_back(w[k]);
      model.alice_strategies.push_back(added_a[k]);
      model.bob_strategies.push_back(added_b[k]);
    }
  }
  return model;
}

Assemblage steering_assemblage(const Vec& omega, const std::vector<Measurement>& a_meas,
                               const CompositeSystem& comp) {
  Assemblage out;
  out.n_inputs = a_meas.size();
  out.n_outputs = a_meas.empty() ? 0 : a_meas[0].size();
  for (const Measurement& m : a_meas) check_measurement(m, comp.sys_a.unit_effect);
  Vec total_ref;
  for (std::size_t x = 0; x < out.n_inputs; ++x) {
    Vec total(comp.sys_b.dim, 0.0);
    double norm_sum = 0.0;
    for (std::size_t a = 0; a < out.n_outputs; ++a) {
      SteeredVector sv = conditional_state(a_meas[x][a], Party::A, omega, comp);
      total = add(total, sv.vector);
      norm_sum += sv.norm;
      out.norms.push_back(sv.norm);
      out.elements.push_back(std::move(sv.vector));
    }
    if (std::fabs(norm_sum - 1.0) > kTolNum)
      throw GptError("steering_assemblage: norms do not sum to one");
    if (x == 0)
      total_ref = total;
    else if (norm_inf(sub(total, total_ref)) > kTolNum)
      throw GptError("steering_assemblage: assemblage signals");
  }
  return out;
}

LhsCheck lhs_check(const Assemblage& assemblage, const std::vector<Measurement>& a_meas,
                   const SepCertificate& certificate, const CompositeSystem& comp) {
  LhsCheck out;
  for (std::size_t x = 0; x < assemblage.n_inputs; ++x)
    for (std::size_t a = 0; a < assemblage.n_outputs; ++a) {
      Vec expected(comp.sys_b.dim, 0.0);
      for (std::size_t i = 0; i < certificate.weights.size(); ++i) {
        const double c =
            certificate.weights[i] * dot(a_meas[x][a], certificate.states_a[i]);
        expected = add(expected, scale(certificate.states_b[i], c));
      }
      const double r =
          norm_inf(sub(expected, assemblage.elements[x * assemblage.n_outputs + a]));
      out.worst_residual = std::max(out.worst_residual, r);
    }
  out.pass = out.worst_residual <= kTolNum;
  return out;
}

namespace {

Vec certificate_local_span(const SepCertificate& cert, const CompositeSystem& comp) {
  Vec acc(comp.joint.dim, 0.0);
  for (std::size_t i = 0; i < cert.weights.size(); ++i)
    acc = add(acc, scale(boxtimes_state(cert.states_a[i], cert.states_b[i], comp),
                         cert.weights[i]));
  return acc;
}

}  // namespace

TeleportCheck teleportage_constancy(const Vec& omega, const Vec& joint_effect_sa,
                                    const std::vector<Vec>& inputs, const CompositeSystem& comp,
                                    const TomographicDecomposition& dec,
                                    const SepCertificate& certificate) {
  if (comp.kind != "two-rebit")
    throw UnsupportedTheoryError("teleportage_constancy: supported for the two-rebit composite");
  const Vec local_span = dec.pi_tl.apply(omega);
  if (norm_inf(sub(local_span, certificate_local_span(certificate, comp))) > 1e-7)
    throw GptError(
        "teleportage_constancy: certificate does not reproduce the local-span part "
        "(resource must lack local-span entanglement)");

  const PauliStringSpace& chain3 = PauliStringSpace::rebit_chain(3);
  const PauliStringSpace& pair = PauliStringSpace::two_rebit();
  const PauliStringSpace& site = PauliStringSpace::rebit_chain(1);
  const Vec holistic = dec.pi_tnl.apply(omega);

  TeleportCheck out;
  out.n_inputs = inputs.size();
  for (const Vec& psi : inputs) {
    // psi sits on site S, the resource on sites (A, B); the effect acts on
    // (S, A) and leaves a vector on B.
    const Vec full = tensor_coords(site, psi, pair, omega, chain3);
    const Vec vb = contract_coords(chain3, full, {0, 1}, pair, joint_effect_sa, site);

    const Vec full_h = tensor_coords(site, psi, pair, holistic, chain3);
    const Vec vb_h = contract_coords(chain3, full_h, {0, 1}, pair, joint_effect_sa, site);
    out.max_holistic_norm = std::max(out.max_holistic_norm, norm_inf(vb_h));

    Vec expected(3, 0.0);
    for (std::size_t i = 0; i < certificate.weights.size(); ++i) {
      const Vec pair_sa = tensor_coords(site, psi, site, certificate.states_a[i], pair);
      const double c = certificate.weights[i] * dot(joint_effect_sa, pair_sa);
      expected = add(expected, scale(certificate.states_b[i], c));
    }
    out.worst_model_residual = std::max(out.worst_model_residual, norm_inf(sub(vb, expected)));
  }
  out.pass = out.max_holistic_norm <= kTolNum && out.worst_model_residual <= kTolNum;
  return out;
}

DenseCodeTranscript dense_code_bct(int x, int y) {
  DenseCodeTranscript t;
  t.bit_x = x;
  t.bit_y = y;
  // Shared state |(0b)^-> with b = 0; the sign index is 1 for '-'.
  Vec state(8, 0.0);
  state[1] = 1.0;  // (i=0, j=0, s='-')
  state = bct_local_encode(x == 1, y == 1).apply(state);

  // Global readout over the eight extremal states.
  t.outcome_probs.assign(8, 0.0);
  std::size_t best = 0;
  for (std::size_t k = 0; k < 8; ++k) {
    t.outcome_probs[k] = state[k];
    if (state[k] > t.outcome_probs[best]) best = k;
  }
  const int i = static_cast<int>(best) / 4;
  const int s = static_cast<int>(best) % 2;
  t.decoded_x = i;
  t.decoded_y = s == 0 ? 1 : 0;  // '+' encodes y = 1, starting sign is '-'
  t.decode_prob = t.outcome_probs[best];
  t.certain = std::fabs(t.decode_prob - 1.0) <= 1e-12;

  // Tampered decoder restricted to product effects: local indicator readout
  // of (i, j). The x bit survives; the sign statistics collapse.
  const CompositeSystem comp = make_bct_pair();
  auto product_distribution = [&comp](const Vec& w) {
    Vec p;
    for (int ii = 0; ii < 2; ++ii)
      for (int jj = 0; jj < 2; ++jj) {
        Vec ea(2, 0.0), eb(2, 0.0);
        ea[static_cast<std::size_t>(ii)] = 1.0;
        eb[static_cast<std::size_t>(jj)] = 1.0;
        p.push_back(dot(boxtimes_effect(ea, eb, comp), w));
      }
    return p;
  };
  Vec alt(8, 0.0);
  alt[1] = 1.0;
  alt = bct_local_encode(x == 1, y == 0).apply(alt);  // the other y, same x
  const Vec px = product_distribution(state);
  const Vec px_alt = product_distribution(alt);
  double tv = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) tv += 0.5 * std::fabs(px[k] - px_alt[k]);
  t.tampered_y_success = 0.5 + 0.5 * tv;

  Vec alt_x(8, 0.0);
  alt_x[1] = 1.0;
  alt_x = bct_local_encode(x == 0, y == 1).apply(alt_x);  // the other x, same y
  const Vec qx_alt = product_distribution(alt_x);
  double tvx = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) tvx += 0.5 * std::fabs(px[k] - qx_alt[k]);
  t.tampered_x_success = 0.5 + 0.5 * tvx;
  return t;
}

HidingAudit data_hiding_audit(const Vec& omega0, const Vec& omega1, const CompositeSystem& comp,
                              const TomographicDecomposition& dec) {
  HidingAudit audit;
  const Vec diff = sub(omega0, omega1);
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators)
      audit.worst_local_gap = std::max(
          audit.worst_local_gap, std::fabs(dot(boxtimes_effect(e, f, comp), diff)));
  audit.local_indistinguishable = norm_inf(dec.pi_tl.apply(diff)) <= kTolNum;

  if (comp.discrimination_measurement) {
    const auto& [e0, e1] = *comp.discrimination_measurement;
    const double worst =
        std::max({std::fabs(dot(e0, omega0) - 1.0), std::fabs(dot(e0, omega1)),
                  std::fabs(dot(e1, omega0)), std::fabs(dot(e1, omega1) - 1.0)});
    audit.globally_discriminable = worst <= kTolNum;
  }

  audit.tl_free = !has_tl_entanglement(omega0, comp, dec).first &&
                  !has_tl_entanglement(omega1, comp, dec).first;
  return audit;
}

Vec local_encode_rebit(int x) {
  Vec state = named_states().at("omega-plus");
  if (x % 2 == 1) {
    const PauliStringSpace& pair = PauliStringSpace::two_rebit();
    for (std::size_t i = 0; i < pair.dim(); ++i) {
      const auto letter = pair.words()[i][0];
      if (letter == 1 || letter == 3) state[i] = -state[i];  // X or Y on the A site
    }
  }
  return state;
}

LoccTranscript locc_decode(int x, std::uint64_t seed, std::size_t trials) {
  LoccTranscript t;
  t.bit = x;
  const PauliStringSpace& pair = PauliStringSpace::two_rebit();
  const PauliStringSpace& chain4 = PauliStringSpace::rebit_chain(4);
  const Vec omega_x = named_states().at(x == 0 ? "hiding-zero" : "hiding-one");
  const Vec resource = named_states().at("hiding-zero");

  // Site order (A, B, A', B'): the hidden pair sits on (A, B), the extra
  // resource on (A', B'); Alice holds sites {0, 2}, Bob sites {1, 3}.
  const Vec full = tensor_coords(pair, omega_x, pair, resource, chain4);
  if (min_eigenvalue_symmetric(reconstruct_real(chain4, full, 1.0 / 16.0)) < -kTolPsd)
    throw GptError("locc_decode: four-rebit state failed the validity check");

  Vec e0(10, 0.0), e1(10, 0.0);
  e0[0] = 0.5;
  e0[9] = 0.5;
  e1[0] = 0.5;
  e1[9] = -0.5;

  t.conditional_a0 = contract_coords(chain4, full, {0, 2}, pair, e0, pair);
  t.conditional_a1 = contract_coords(chain4, full, {0, 2}, pair, e1, pair);
  t.alice_marginal0 = t.conditional_a0[0];

  const Vec expect0 = scale(named_states().at(x == 0 ? "hiding-zero" : "hiding-one"), 0.5);
  const Vec expect1 = scale(named_states().at(x == 0 ? "hiding-one" : "hiding-zero"), 0.5);
  t.conditional_residual = std::max(norm_inf(sub(t.conditional_a0, expect0)),
                                    norm_inf(sub(t.conditional_a1, expect1)));

  t.p00 = dot(e0, t.conditional_a0);
  t.p01 = dot(e1, t.conditional_a0);
  t.p10 = dot(e0, t.conditional_a1);
  t.p11 = dot(e1, t.conditional_a1);

  // Decode from the dominant parity.
  t.decoded = (t.p00 + t.p11 >= t.p01 + t.p10) ? 0 : 1;

  // Sampled runs: draw Alice's outcome, then Bob's conditional outcome.
  Rng rng(seed);
  t.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    const double pa0 = t.p00 + t.p01;
    const int a = rng.next_double() < pa0 ? 0 : 1;
    const double pb0 = a == 0 ? t.p00 / std::max(pa0, 1e-300)
                              : t.p10 / std::max(1.0 - pa0, 1e-300);
    const int b = rng.next_double() < pb0 ? 0 : 1;
    if ((a ^ b) == x) ++t.correct_trials;
  }
  return t;
}

namespace {

// Product-model evaluation of the remote-implementation identities for the
// bct composite: only the local-span content of a joint measurement on the
// re-paired systems is defined on the product of two pair states.
void bct_remote_implementation(const CompositeSystem& comp, const Vec& omega0, const Vec& omega1,
                               const std::pair<Vec, Vec>& measurement, const Vec& resource,
                               SecretShareReport& rep) {
  const TomographicDecomposition dec = decompose(comp);
  const Vec effects[2] = {dec.pi_tl.transposed().apply(measurement.first),
                          dec.pi_tl.transposed().apply(measurement.second)};
  const Vec* hiding[2] = {&omega0, &omega1};

  for (int x = 0; x < 2; ++x) {
    const Vec& wx = *hiding[x];
    double table[2][2] = {{0, 0}, {0, 0}};
    for (int a = 0; a < 2; ++a) {
      // phi_a(i, i') = local-span content of Alice's effect, constant in the
      // pairing sign; conditional (j, j') weights follow by marginalizing
      // both signs.
      Vec cond(8, 0.0);
      for (int jj = 0; jj < 2; ++jj)
        for (int jp = 0; jp < 2; ++jp) {
          double m = 0.0;
          for (int ii = 0; ii < 2; ++ii)
            for (int ip = 0; ip < 2; ++ip) {
              const double phi = effects[a][static_cast<std::size_t>(4 * ii + 2 * ip)];
              double wa = 0.0, wb = 0.0;
              for (int s = 0; s < 2; ++s) {
                wa += wx[static_cast<std::size_t>(4 * ii + 2 * jj + s)];
                wb += resource[static_cast<std::size_t>(4 * ip + 2 * jp + s)];
              }
              m += phi * wa * wb;
            }
          // Only the local span of the conditional is determined; both signs
          // carry half.
          cond[static_cast<std::size_t>(4 * jj + 2 * jp)] += 0.5 * m;
          cond[static_cast<std::size_t>(4 * jj + 2 * jp + 1)] += 0.5 * m;
        }
      double pa = 0.0;
      for (double v : cond) pa += v;
      const Vec& target = *hiding[(x + a) % 2];
      rep.residual_remote =
          std::max(rep.residual_remote, norm_inf(sub(cond, scale(target, pa))));
      table[a][0] = dot(measurement.first, cond);
      table[a][1] = dot(measurement.second, cond);
    }
    rep.p00[x] = table[0][0];
    rep.p01[x] = table[0][1];
    rep.p10[x] = table[1][0];
    rep.p11[x] = table[1][1];
  }
  rep.remote_implementation = rep.residual_remote <= kTolNum;
}

void rebit_remote_implementation(const Vec& omega0, const Vec& omega1,
                                 const std::pair<Vec, Vec>& measurement, const Vec& resource,
                                 SecretShareReport& rep) {
  const PauliStringSpace& pair = PauliStringSpace::two_rebit();
  const PauliStringSpace& chain4 = PauliStringSpace::rebit_chain(4);
  const Vec* hiding[2] = {&omega0, &omega1};
  const Vec* effects[2] = {&measurement.first, &measurement.second};

  for (int x = 0; x < 2; ++x) {
    const Vec full = tensor_coords(pair, *hiding[x], pair, resource, chain4);
    double table[2][2];
    for (int a = 0; a < 2; ++a) {
      const Vec cond = contract_coords(chain4, full, {0, 2}, pair, *effects[a], pair);
      const double pa = cond[0];
      const Vec& target = *hiding[(x + a) % 2];
      rep.residual_remote =
          std::max(rep.residual_remote, norm_inf(sub(cond, scale(target, pa))));
      table[a][0] = dot(*effects[0], cond);
      table[a][1] = dot(*effects[1], cond);
    }
    rep.p00[x] = table[0][0];
    rep.p01[x] = table[0][1];
    rep.p10[x] = table[1][0];
    rep.p11[x] = table[1][1];
  }
  rep.remote_implementation = rep.residual_remote <= kTolNum;
}

}  // namespace

SecretShareReport secret_sharing_conditions(const CompositeSystem& comp, const Vec& omega0,
                                            const Vec& omega1,
                                            const std::pair<Vec, Vec>& measurement,
                                            const Vec& swap_resource) {
  SecretShareReport rep;
  const TomographicDecomposition dec = decompose(comp);

  const EntanglementReport r0 = classify(omega0, comp, dec);
  const EntanglementReport r1 = classify(omega1, comp, dec);
  rep.pair_is_holistic_only = !r0.separable && !r1.separable && !r0.has_tl && !r1.has_tl &&
                              r0.has_tnl && r1.has_tnl;

  const Vec diff = sub(omega0, omega1);
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators)
      rep.worst_local_gap =
          std::max(rep.worst_local_gap, std::fabs(dot(boxtimes_effect(e, f, comp), diff)));
  rep.product_indistinguishable = rep.worst_local_gap <= kTolNum;

  const auto& [e0, e1] = measurement;
  rep.discriminable = std::fabs(dot(e0, omega0) - 1.0) <= kTolNum &&
                      std::fabs(dot(e0, omega1)) <= kTolNum &&
                      std::fabs(dot(e1, omega0)) <= kTolNum &&
                      std::fabs(dot(e1, omega1) - 1.0) <= kTolNum;

  if (comp.kind == "two-rebit")
    rebit_remote_implementation(omega0, omega1, measurement, swap_resource, rep);
  else if (comp.kind == "bct")
    bct_remote_implementation(comp, omega0, omega1, measurement, swap_resource, rep);
  else
    throw UnsupportedTheoryError("secret_sharing_conditions: unsupported composite kind " +
                                 comp.kind);

  if (rep.pair_is_holistic_only && rep.product_indistinguishable && rep.discriminable &&
      rep.remote_implementation) {
    rep.decodable = true;
    for (int x = 0; x < 2; ++x) {
      const double aligned = x == 0 ? rep.p00[x] + rep.p11[x] : rep.p01[x] + rep.p10[x];
      if (std::fabs(aligned - 1.0) > kTolNum) rep.decodable = false;
    }
  }
  return rep;
}

std::vector<Measurement> rebit_measurement_family(std::uint64_t seed, std::size_t n_random) {
  std::vector<Measurement> fam;
  auto binary = [](double theta) {
    Vec e = {0.5, 0.5 * std::cos(theta), 0.5 * std::sin(theta)};
    Vec ec = {0.5, -0.5 * std::cos(theta), -0.5 * std::sin(theta)};
    return Measurement{e, ec};
  };
  fam.push_back(binary(0.0));                      // sigma_x
  fam.push_back(binary(1.5707963267948966));      // sigma_z
  Rng rng(seed);
  for (std::size_t k = 0; k < n_random; ++k)
    fam.push_back(binary(rng.next_double() * 6.283185307179586));
  return fam;
}

}  // namespace gpttomo
