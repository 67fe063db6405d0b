#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gpttomo/rng.hpp"
#include "gpttomo/theories.hpp"
#include "gpttomo/tomography.hpp"

using namespace gpttomo;

TEST_CASE("product-span dimensions per theory") {
  auto dims = [](const char* name) {
    const auto [s, e] = tl_subspaces(make_composite(name));
    return std::pair<std::size_t, std::size_t>{s.dim(), e.dim()};
  };
  CHECK(dims("two-rebit") == std::pair<std::size_t, std::size_t>{9, 9});
  CHECK(dims("qubit-pair") == std::pair<std::size_t, std::size_t>{16, 16});
  CHECK(dims("bct") == std::pair<std::size_t, std::size_t>{4, 4});
  CHECK(dims("classical:2") == std::pair<std::size_t, std::size_t>{4, 4});
}

TEST_CASE("holistic subspaces per theory") {
  {
    const auto [hs, he] = holistic_subspaces(make_two_rebit());
    REQUIRE(hs.dim() == 1);
    REQUIRE(he.dim() == 1);
    CHECK(std::fabs(hs.basis[0][9]) == doctest::Approx(1.0));
    CHECK(std::fabs(he.basis[0][9]) == doctest::Approx(1.0));
  }
  {
    const auto [hs, he] = holistic_subspaces(make_qubit_pair());
    CHECK(hs.dim() == 0);
    CHECK(he.dim() == 0);
  }
  {
    const auto [hs, he] = holistic_subspaces(make_bct_pair());
    CHECK(hs.dim() == 4);
    CHECK(he.dim() == 4);
  }
}

TEST_CASE("the local-span projector of two rebits zeroes exactly the YY coordinate") {
  const Mat p = build_pi_tl(make_two_rebit());
  Mat expected = Mat::identity(10);
  expected(9, 9) = 0.0;
  CHECK((p - expected).max_abs() < 1e-9);
}

TEST_CASE("projector actions on the holistic pair") {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  for (const char* name : {"omega-plus", "omega-minus"}) {
    const Vec w = named_states().at(name);
    Vec mixed(10, 0.0);
    mixed[0] = 1.0;
    CHECK(norm_inf(sub(dec.pi_tl.apply(w), mixed)) < 1e-9);
    Vec holistic(10, 0.0);
    holistic[9] = w[9];
    CHECK(norm_inf(sub(dec.pi_tnl.apply(w), holistic)) < 1e-9);
  }
}

TEST_CASE("local-span projector is the identity for local composites") {
  for (const char* name : {"classical:2", "qubit-pair"}) {
    const CompositeSystem comp = make_composite(name);
    CHECK((build_pi_tl(comp) - Mat::identity(comp.joint.dim)).max_abs() < 1e-9);
    CHECK(build_pi_tnl(comp).max_abs() < 1e-9);
  }
}

TEST_CASE("single-system state-effect channel sums to the identity") {
  const GptSystem rebit = make_rebit();
  const Mat id3 = effect_state_identity(rebit.canonical_state_basis, rebit.canonical_effect_basis);
  CHECK((id3 - Mat::identity(3)).max_abs() < 1e-9);
}

TEST_CASE("effect-state representation matches the subspace projector") {
  SUBCASE("two-rebit with the canonical local bases") {
    const CompositeSystem comp = make_two_rebit();
    CHECK((build_pi_tl_effect_state(comp) - build_pi_tl(comp)).max_abs() < 1e-9);
  }
  SUBCASE("two-rebit with a different admissible basis choice") {
    const CompositeSystem comp = make_two_rebit();
    const std::vector<Vec> states = {comp.sys_a.state_generators[0],
                                     comp.sys_a.state_generators[2],
                                     comp.sys_a.state_generators[5]};
    const std::vector<Vec> effects = {comp.sys_a.effect_generators[0],
                                      comp.sys_a.effect_generators[1],
                                      comp.sys_a.effect_generators[3]};
    const Mat p = build_pi_tl_effect_state(comp, states, effects, states, effects);
    CHECK((p - build_pi_tl(comp)).max_abs() < 1e-9);
  }
  SUBCASE("classical bits give the identity") {
    const CompositeSystem comp = make_classical_pair(2, 2);
    CHECK((build_pi_tl_effect_state(comp) - Mat::identity(4)).max_abs() < 1e-9);
  }
  SUBCASE("bct") {
    const CompositeSystem comp = make_bct_pair();
    CHECK((build_pi_tl_effect_state(comp) - build_pi_tl(comp)).max_abs() < 1e-9);
  }
}

TEST_CASE("hourglass representation of the holistic projector") {
  SUBCASE("two-rebit: rank one on the YY coordinate") {
    const CompositeSystem comp = make_two_rebit();
    const Mat q = build_pi_tnl_hourglass(comp);
    CHECK((q - build_pi_tnl(comp)).max_abs() < 1e-9);
    Mat expected(10, 10);
    expected(9, 9) = 1.0;
    CHECK((q - expected).max_abs() < 1e-9);
  }
  SUBCASE("local composite: the zero map") {
    const CompositeSystem comp = make_qubit_pair();
    CHECK(build_pi_tnl_hourglass(comp).max_abs() < 1e-9);
  }
  SUBCASE("bct: rank four, agreeing with the complementary projector") {
    const CompositeSystem comp = make_bct_pair();
    const Mat q = build_pi_tnl_hourglass(comp);
    CHECK((q - build_pi_tnl(comp)).max_abs() < 1e-9);
    const Mat p = Mat::identity(8) - q;
    CHECK(span_basis({q.apply({1, 0, 0, 0, 0, 0, 0, 0}), q.apply({0, 0, 1, 0, 0, 0, 0, 0}),
                      q.apply({0, 0, 0, 0, 1, 0, 0, 0}), q.apply({0, 0, 0, 0, 0, 0, 1, 0})})
              .dim() == 4);
    (void)p;
  }
}

TEST_CASE("projector law suite passes on the shipped composites") {
  for (const char* name : {"classical:2", "bct", "two-rebit", "qubit-pair"}) {
    const CompositeSystem comp = make_composite(name);
    const TomographicDecomposition dec = decompose(comp);
    const ProjectorLawReport rep = verify_projector_laws(dec, comp);
    CHECK_MESSAGE(rep.all_pass(), name);
    for (const ProjectorLaw& law : rep.laws) CHECK_MESSAGE(law.residual <= 1e-9, law.name);
  }
}

TEST_CASE("projector law suite flags a projector with the wrong kernel") {
  const CompositeSystem comp = make_two_rebit();
  TomographicDecomposition dec = decompose(comp);
  // Tilt the kernel away from the holistic axis: now the complementary part
  // no longer annihilates the unit.
  Vec tilted(10, 0.0);
  tilted[9] = 1.0;
  tilted[0] = 0.5;
  dec.pi_tl = oblique_projector(dec.ab_tensor, Subspace{10, {tilted}});
  dec.pi_tnl = Mat::identity(10) - dec.pi_tl;
  const ProjectorLawReport rep = verify_projector_laws(dec, comp);
  CHECK_FALSE(rep.all_pass());
  const ProjectorLaw* law = rep.find("unit_annihilates_pi_tnl");
  REQUIRE(law != nullptr);
  CHECK_FALSE(law->pass);
}

TEST_CASE("dimension split identities") {
  for (const char* name : {"classical:2", "bct", "two-rebit", "qubit-pair"}) {
    const CompositeSystem comp = make_composite(name);
    const TomographicDecomposition dec = decompose(comp);
    CHECK(dec.ab_tensor.dim() + dec.h_state.dim() == comp.joint.dim);
    CHECK(dec.ab_tensor_dual.dim() + dec.h_effect.dim() == comp.joint.dim);
  }
}

TEST_CASE("product effects annihilate the holistic state basis") {
  for (const char* name : {"bct", "two-rebit"}) {
    const CompositeSystem comp = make_composite(name);
    const TomographicDecomposition dec = decompose(comp);
    for (const Vec& e : comp.sys_a.effect_generators)
      for (const Vec& f : comp.sys_b.effect_generators)
        for (const Vec& h : dec.h_state.basis)
          CHECK(std::fabs(dot(boxtimes_effect(e, f, comp), h)) < 1e-9);
  }
}

TEST_CASE("statistics change only when both sides have holistic parts") {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  for (const Vec& e : comp.joint.effect_generators)
    for (const Vec& w : comp.joint.state_generators) {
      const double via_projector = dot(e, dec.pi_tl.apply(w));
      const double direct = dot(e, w);
      if (std::fabs(via_projector - direct) > 1e-9) {
        CHECK(norm_inf(dec.pi_tnl.apply(w)) > 1e-9);
        CHECK(norm_inf(dec.pi_tnl.transposed().apply(e)) > 1e-9);
      }
    }
}

TEST_CASE("splitting inner product orthogonalizes the two parts") {
  const CompositeSystem comp = make_two_rebit();
  const TomographicDecomposition dec = decompose(comp);
  const Mat gram = splitting_inner_product(dec);
  CHECK(min_eigenvalue_symmetric(gram) > 0.0);
  for (const Vec& v : dec.ab_tensor.basis)
    for (const Vec& h : dec.h_state.basis)
      CHECK(std::fabs(dot(v, gram.apply(h))) < 1e-9);
  // The Riesz map sends the holistic state basis into the holistic effect
  // subspace.
  for (const Vec& h : dec.h_state.basis)
    CHECK(distance_to_span(dec.h_effect, gram.apply(h)) < 1e-9);
}

TEST_CASE("splitting inner product on a local composite is positive definite") {
  const CompositeSystem comp = make_classical_pair(2, 2);
  const TomographicDecomposition dec = decompose(comp);
  const Mat gram = splitting_inner_product(dec);
  CHECK(min_eigenvalue_symmetric(gram) > 0.0);
}
