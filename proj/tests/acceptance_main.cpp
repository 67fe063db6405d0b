// Acceptance suite: runs every documented acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gpttomo/entanglement.hpp"
#include "gpttomo/gpt_model.hpp"
#include "gpttomo/protocols.hpp"
#include "gpttomo/rng.hpp"
#include "gpttomo/simplex.hpp"
#include "gpttomo/theories.hpp"
#include "gpttomo/tomography.hpp"

using namespace gpttomo;

namespace {

int g_failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

Vec coords_from_matrix(const Mat& rho) {
  Vec coords(10, 0.0);
  const auto& space = PauliStringSpace::two_rebit();
  for (std::size_t k = 0; k < 10; ++k) {
    Vec unit(10, 0.0);
    unit[k] = 1.0;
    const Mat word = reconstruct_real(space, unit, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) acc += word(i, j) * rho(i, j);
    coords[k] = acc;
  }
  return coords;
}

Vec random_two_rebit_state(Rng& rng) {
  Mat g(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g(i, j) = rng.next_gaussian();
  Mat rho = g * g.transposed();
  double trace = 0.0;
  for (std::size_t i = 0; i < 4; ++i) trace += rho(i, i);
  return coords_from_matrix(rho.scaled(1.0 / trace));
}

Vec random_separable_state(Rng& rng, const CompositeSystem& comp, SepCertificate* cert) {
  const std::size_t k = 3 + rng.next_index(3);
  Vec acc(10, 0.0);
  SepCertificate c;
  Vec weights(k);
  double total = 0.0;
  for (double& w : weights) {
    w = 0.05 + rng.next_double();
    total += w;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double th = rng.next_double() * 6.283185307179586;
    const double ph = rng.next_double() * 6.283185307179586;
    const double ra = std::sqrt(rng.next_double());
    const double rb = std::sqrt(rng.next_double());
    const Vec a = {1.0, ra * std::cos(th), ra * std::sin(th)};
    const Vec b = {1.0, rb * std::cos(ph), rb * std::sin(ph)};
    const double w = weights[i] / total;
    acc = add(acc, scale(boxtimes_state(a, b, comp), w));
    c.weights.push_back(w);
    c.states_a.push_back(a);
    c.states_b.push_back(b);
  }
  if (cert) *cert = c;
  return acc;
}

// Separable backbone plus an admissible holistic component: a state whose
// local-span part has a known product decomposition.
Vec random_holistic_only_state(Rng& rng, const CompositeSystem& comp, SepCertificate* cert) {
  while (true) {
    SepCertificate c;
    const Vec sigma = random_separable_state(rng, comp, &c);
    // Largest |t| keeping the matrix positive semidefinite, by bisection.
    auto psd_at = [&sigma](double t) {
      Vec coords = sigma;
      coords[9] += t;
      return min_eigenvalue_symmetric(iota_embed(coords)) >= 1e-12;
    };
    double lo = 0.0, hi = 4.0;
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (psd_at(mid) ? lo : hi) = mid;
    }
    if (lo < 1e-3) continue;  // backbone too close to the boundary, resample
    const double sign = rng.next_bit() ? 1.0 : -1.0;
    const double t = sign * lo * (0.3 + 0.6 * rng.next_double());
    Vec out = sigma;
    out[9] += t;
    if (cert) *cert = c;
    return out;
  }
}

void criterion_1() {
  const auto dims = [](const char* name) {
    const CompositeSystem comp = make_composite(name);
    const TomographicDecomposition dec = decompose(comp);
    return std::array<std::size_t, 4>{comp.joint.dim, dec.ab_tensor.dim(), dec.h_state.dim(),
                                      dec.h_effect.dim()};
  };
  const bool pass = dims("two-rebit") == std::array<std::size_t, 4>{10, 9, 1, 1} &&
                    dims("qubit-pair") == std::array<std::size_t, 4>{16, 16, 0, 0} &&
                    dims("classical:2") == std::array<std::size_t, 4>{4, 4, 0, 0};
  report(1, "dimension signatures 10/9/1, 16/16/0, 4/4/0", pass);
}

void criterion_2() {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  double worst = 0.0;
  for (const char* name : {"omega-plus", "omega-minus"}) {
    const Vec w = named_states().at(name);
    const Mat tl = iota_embed(dec.pi_tl.apply(w));
    const Mat tnl = iota_embed(dec.pi_tnl.apply(w));
    const Mat quarter_id = Mat::identity(4).scaled(0.25);
    Vec yy(10, 0.0);
    yy[9] = w[9];  // +/- 1
    const Mat quarter_yy = iota_embed(yy);
    worst = std::max(worst, (tl - quarter_id).max_abs());
    worst = std::max(worst, (tnl - quarter_yy).max_abs());
  }
  report(2, "projector actions on the holistic pair", worst <= 1e-9,
         "worst entry delta " + std::to_string(worst));
}

void criterion_3() {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  const double eig =
      min_eigenvalue_symmetric(iota_embed(dec.pi_tl.apply(named_states().at("phi-plus"))));
  bool pass = std::fabs(eig + 0.25) <= 1e-9;

  const EntanglementReport bell = classify(named_states().at("phi-plus"), comp, dec);
  pass = pass && bell.has_tl && bell.has_tnl && !bell.separable;
  for (const char* name : {"omega-plus", "omega-minus"}) {
    const EntanglementReport rep = classify(named_states().at(name), comp, dec);
    pass = pass && !rep.has_tl && rep.has_tnl && !rep.separable;
  }
  const EntanglementReport prod =
      classify(boxtimes_state({1, 1, 0}, {1, 0, 1}, comp), comp, dec);
  pass = pass && !prod.has_tl && !prod.has_tnl && prod.separable;
  report(3, "projected Bell eigenvalue -0.25 and reference classifications", pass,
         "min eigenvalue " + std::to_string(eig));
}

void criterion_4() {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  Rng rng(kDefaultSeed);
  std::size_t n_separable = 0, counterexamples = 0;
  const std::size_t trials = 1000;
  for (std::size_t k = 0; k < trials; ++k) {
    Vec w;
    if (k % 5 == 0) {
      w = random_separable_state(rng, comp, nullptr);
    } else if (k % 5 == 1) {
      // Project a random state onto the local span; keep it when it remains
      // a state (these must all come out separable).
      w = dec.pi_tl.apply(random_two_rebit_state(rng));
      if (min_eigenvalue_symmetric(iota_embed(w)) < -1e-12) w = random_two_rebit_state(rng);
    } else {
      w = random_two_rebit_state(rng);
    }
    const bool sep = is_separable_state(w, comp).separable;
    const bool yy_zero = std::fabs(dec.pi_tnl.apply(w)[9]) <= 1e-9;
    const bool ppt = ppt_separable_2x2(iota_embed(w));
    if (sep != (yy_zero && ppt)) ++counterexamples;
    if (sep) ++n_separable;
  }
  report(4,
         "separability equals vanishing holistic part plus PPT on " +
             std::to_string(trials) + " random states",
         counterexamples == 0 && n_separable > 100,
         std::to_string(counterexamples) + " counterexamples, " +
             std::to_string(n_separable) + " separable");
}

void criterion_5() {
  double worst = 0.0;
  for (const char* name : {"two-rebit", "bct"}) {
    const CompositeSystem comp = make_composite(name);
    worst = std::max(worst, (build_pi_tl_effect_state(comp) - build_pi_tl(comp)).max_abs());
    worst = std::max(worst, (build_pi_tnl_hourglass(comp) - build_pi_tnl(comp)).max_abs());
  }
  report(5, "projector representations agree on two-rebit and bct", worst <= 1e-9,
         "worst entry delta " + std::to_string(worst));
}

void criterion_6() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"classical:2", "bct", "two-rebit", "qubit-pair"}) {
    const CompositeSystem comp = make_composite(name);
    const ProjectorLawReport rep = verify_projector_laws(decompose(comp), comp);
    for (const ProjectorLaw& law : rep.laws)
      if (!law.pass || law.residual > 1e-9) {
        pass = false;
        detail = std::string(name) + "/" + law.name;
      }
  }
  report(6, "projector-law suite on all four composites", pass, detail);
}

void criterion_7() {
  const CompositeSystem comp = make_two_rebit();
  const Mat pi_tl = build_pi_tl(comp);
  const Mat swirl = swirl_operator();
  Rng rng(kDefaultSeed + 7);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Vec w = random_two_rebit_state(rng);
    const Vec lhs = iota_coords(pi_tl.apply(w));
    const Vec rhs = swirl.apply(iota_coords(w));
    worst = std::max(worst, norm_inf(sub(lhs, rhs)));
  }
  report(7, "conjugation-twirl identity on 100 random states", worst <= 1e-9,
         "worst entry delta " + std::to_string(worst));
}

void criterion_8() {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  Rng rng(kDefaultSeed + 8);

  Vec e_joint(10, 0.0);
  e_joint[0] = 0.5;
  e_joint[9] = 0.5;

  std::size_t lhv_ok = 0, lhs_ok = 0, teleport_ok = 0;
  std::size_t total = 0;
  double worst_holistic = 0.0;

  auto run_state = [&](const Vec& w, const SepCertificate& cert) {
    ++total;
    Rng split(rng.next_u64());
    const std::vector<Measurement> fam_a = rebit_measurement_family(split.next_u64());
    const std::vector<Measurement> fam_b = rebit_measurement_family(split.next_u64());

    const BellTable table = bell_table(w, fam_a, fam_b, comp);
    if (lhv_membership(table).feasible) ++lhv_ok;

    const Assemblage assemblage = steering_assemblage(w, fam_a, comp);
    const LhsCheck lhs = lhs_check(assemblage, fam_a, cert, comp);
    if (lhs.pass) ++lhs_ok;

    std::vector<Vec> inputs = {{1, 0, 1}, {1, 1, 0}};
    for (int i = 0; i < 8; ++i) {
      const double r = std::sqrt(split.next_double());
      const double th = split.next_double() * 6.283185307179586;
      inputs.push_back({1.0, r * std::cos(th), r * std::sin(th)});
    }
    const TeleportCheck tc = teleportage_constancy(w, e_joint, inputs, comp, dec, cert);
    worst_holistic = std::max(worst_holistic, tc.max_holistic_norm);
    if (tc.pass) ++teleport_ok;
  };

  for (const char* name : {"omega-plus", "omega-minus"}) {
    SepCertificate cert;
    cert.weights = {1.0};
    cert.states_a = {{1, 0, 0}};
    cert.states_b = {{1, 0, 0}};
    run_state(named_states().at(name), cert);
  }
  for (int k = 0; k < 50; ++k) {
    SepCertificate cert;
    const Vec w = random_holistic_only_state(rng, comp, &cert);
    run_state(w, cert);
  }

  const bool pass = lhv_ok == total && lhs_ok == total && teleport_ok == total &&
                    worst_holistic <= 1e-9;
  report(8,
         "holistic-only states: local tables, hidden-state models, constant teleportage (" +
             std::to_string(total) + " states)",
         pass,
         std::to_string(lhv_ok) + "/" + std::to_string(lhs_ok) + "/" +
             std::to_string(teleport_ok) + " of " + std::to_string(total) +
             ", worst holistic " + std::to_string(worst_holistic));
}

void criterion_9() {
  bool pass = true;
  std::vector<std::pair<int, int>> decoded;
  for (int x = 0; x < 2 && pass; ++x)
    for (int y = 0; y < 2 && pass; ++y) {
      const DenseCodeTranscript t = dense_code_bct(x, y);
      pass = pass && std::fabs(t.decode_prob - 1.0) <= 1e-12 && t.decoded_x == x &&
             t.decoded_y == y;
      pass = pass && std::fabs(t.tampered_y_success - 0.5) <= 1e-9;
      decoded.emplace_back(t.decoded_x, t.decoded_y);
    }
  report(9, "dense coding: four exact messages, holistic bit hidden from product effects",
         pass);
}

void criterion_10() {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  const HidingAudit audit = data_hiding_audit(named_states().at("hiding-zero"),
                                              named_states().at("hiding-one"), comp, dec);
  const auto& [e0, e1] = *comp.discrimination_measurement;
  const double disc = std::max({std::fabs(dot(e0, named_states().at("hiding-zero")) - 1.0),
                                std::fabs(dot(e1, named_states().at("hiding-one")) - 1.0),
                                std::fabs(dot(e0, named_states().at("hiding-one"))),
                                std::fabs(dot(e1, named_states().at("hiding-zero")))});
  const bool pass =
      audit.worst_local_gap <= 1e-9 && disc <= 1e-9 && audit.perfectly_secure();
  report(10, "perfectly secure data hiding audit", pass,
         "gap " + std::to_string(audit.worst_local_gap));
}

void criterion_11() {
  bool pass = true;
  std::string detail;
  for (int x = 0; x < 2; ++x) {
    const LoccTranscript t = locc_decode(x, kDefaultSeed + 11, 1000);
    const double on0 = x == 0 ? t.p00 : t.p01;
    const double on1 = x == 0 ? t.p11 : t.p10;
    const double off0 = x == 0 ? t.p01 : t.p00;
    const double off1 = x == 0 ? t.p10 : t.p11;
    pass = pass && std::fabs(on0 - 0.5) <= 1e-9 && std::fabs(on1 - 0.5) <= 1e-9 &&
           std::fabs(off0) <= 1e-9 && std::fabs(off1) <= 1e-9;
    pass = pass && t.decoded == x && t.correct_trials == t.trials;
    pass = pass && std::fabs(t.alice_marginal0 - 0.5) <= 1e-9;
    detail += "x=" + std::to_string(x) + ": " + std::to_string(t.correct_trials) + "/" +
              std::to_string(t.trials) + " ";
  }
  report(11, "one-round decoding of the hidden bit over 1000 runs each", pass, detail);
}

void criterion_12() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"classical:2", "bct", "two-rebit", "qubit-pair"}) {
    if (!validate_composition(make_composite(name)).all_pass()) {
      pass = false;
      detail = std::string("shipped composite failed: ") + name;
    }
  }
  {
    CompositeSystem comp = make_bct_pair();
    comp.state_product = comp.state_product.scaled(1.1);
    const CompositionReport rep = validate_composition(comp);
    if (rep.probability_factorization.pass || !rep.unit_factorization.pass) {
      pass = false;
      detail = "scaled product map not flagged on the factorization item";
    }
  }
  {
    CompositeSystem comp = make_classical_pair(2, 2);
    comp.joint.unit_effect = scale(comp.joint.unit_effect, 1.01);
    const CompositionReport rep = validate_composition(comp);
    if (rep.unit_factorization.pass || !rep.probability_factorization.pass) {
      pass = false;
      detail = "broken unit not flagged on the unit item";
    }
  }
  {
    CompositeSystem comp = make_classical_pair(2, 2);
    comp.joint.state_generators.push_back({1.2, -0.2, 0.0, 0.0});
    const CompositionReport rep = validate_composition(comp);
    if (rep.steering_closure.pass || !rep.unit_factorization.pass) {
      pass = false;
      detail = "steering break not flagged on the closure item";
    }
  }
  report(12, "composition validator on shipped composites and three injected faults", pass,
         detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
