#include "gpttomo/theories.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpttomo {

namespace {
constexpr std::uint8_t kI = 0, kX = 1, kZ = 2, kY = 3;
const char kLabelChar[4] = {'I', 'X', 'Z', 'Y'};

std::size_t count_y(const PauliStringSpace::Word& w) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), kY));
}

std::vector<PauliStringSpace::Word> enumerate_words(std::size_t sites, bool even_y_only) {
  std::vector<PauliStringSpace::Word> words;
  PauliStringSpace::Word w(sites, kI);
  while (true) {
    if (!even_y_only || count_y(w) % 2 == 0) words.push_back(w);
    std::size_t pos = sites;
    while (pos > 0) {
      --pos;
      if (w[pos] < 3) {
        ++w[pos];
        std::fill(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end(), kI);
        break;
      }
      if (pos == 0) return words;
    }
  }
}
}  // namespace

PauliStringSpace::PauliStringSpace(std::size_t sites, std::vector<Word> words)
    : sites_(sites), words_(std::move(words)) {
  for (std::size_t i = 0; i < words_.size(); ++i) index_[words_[i]] = i;
}

const PauliStringSpace& PauliStringSpace::rebit_chain(std::size_t sites) {
  static std::map<std::size_t, PauliStringSpace> cache;
  auto it = cache.find(sites);
  if (it == cache.end())
    it = cache.emplace(sites, PauliStringSpace(sites, enumerate_words(sites, true))).first;
  return it->second;
}

const PauliStringSpace& PauliStringSpace::two_rebit() {
  static const PauliStringSpace space(2, {{kI, kI},
                                          {kX, kI},
                                          {kZ, kI},
                                          {kI, kX},
                                          {kI, kZ},
                                          {kX, kX},
                                          {kX, kZ},
                                          {kZ, kX},
                                          {kZ, kZ},
                                          {kY, kY}});
  return space;
}

const PauliStringSpace& PauliStringSpace::qubit() {
  static const PauliStringSpace space(1, enumerate_words(1, false));
  return space;
}

const PauliStringSpace& PauliStringSpace::qubit_pair() {
  static const PauliStringSpace space(2, enumerate_words(2, false));
  return space;
}

std::ptrdiff_t PauliStringSpace::index_of(const Word& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::string PauliStringSpace::label(std::size_t idx) const {
  std::string s;
  for (std::uint8_t c : words_[idx]) s.push_back(kLabelChar[c]);
  return s;
}

std::vector<std::string> PauliStringSpace::labels() const {
  std::vector<std::string> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(label(i));
  return out;
}

Vec tensor_coords(const PauliStringSpace& sa, const Vec& a, const PauliStringSpace& sb,
                  const Vec& b, const PauliStringSpace& out) {
  if (a.size() != sa.dim() || b.size() != sb.dim())
    throw DimensionMismatch("tensor_coords: coefficient size mismatch");
  Vec result(out.dim(), 0.0);
  PauliStringSpace::Word w(sa.sites() + sb.sites());
  for (std::size_t i = 0; i < sa.dim(); ++i) {
    if (a[i] == 0.0) continue;
    const auto& wa = sa.words()[i];
    std::copy(wa.begin(), wa.end(), w.begin());
    for (std::size_t j = 0; j < sb.dim(); ++j) {
      if (b[j] == 0.0) continue;
      const auto& wb = sb.words()[j];
      std::copy(wb.begin(), wb.end(), w.begin() + static_cast<std::ptrdiff_t>(sa.sites()));
      const std::ptrdiff_t k = out.index_of(w);
      if (k < 0) throw DimensionMismatch("tensor_coords: word missing from target space");
      result[static_cast<std::size_t>(k)] = a[i] * b[j];
    }
  }
  return result;
}

Vec contract_coords(const PauliStringSpace& full, const Vec& state,
                    const std::vector<std::size_t>& effect_sites,
                    const PauliStringSpace& eff_space, const Vec& effect,
                    const PauliStringSpace& out_space) {
  if (state.size() != full.dim() || effect.size() != eff_space.dim())
    throw DimensionMismatch("contract_coords: coefficient size mismatch");
  std::vector<bool> is_effect_site(full.sites(), false);
  for (std::size_t s : effect_sites) is_effect_site.at(s) = true;

  Vec out(out_space.dim(), 0.0);
  PauliStringSpace::Word sub(effect_sites.size());
  PauliStringSpace::Word rest(full.sites() - effect_sites.size());
  for (std::size_t idx = 0; idx < full.dim(); ++idx) {
    if (state[idx] == 0.0) continue;
    const auto& w = full.words()[idx];
    std::size_t ri = 0;
    for (std::size_t s = 0; s < full.sites(); ++s) {
      if (is_effect_site[s]) {
        // effect word follows the order the caller listed the sites in
        std::size_t pos = 0;
        while (effect_sites[pos] != s) ++pos;
        sub[pos] = w[s];
      } else {
        rest[ri++] = w[s];
      }
    }
    const std::ptrdiff_t e = eff_space.index_of(sub);
    if (e < 0) continue;  // the effect space has no such component
    if (effect[static_cast<std::size_t>(e)] == 0.0) continue;
    const std::ptrdiff_t r = out_space.index_of(rest);
    if (r < 0) throw DimensionMismatch("contract_coords: residual word missing from out space");
    out[static_cast<std::size_t>(r)] += effect[static_cast<std::size_t>(e)] * state[idx];
  }
  return out;
}

namespace {

Mat kron_mat(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double f = a(i, j);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = f * b(k, l);
    }
  return out;
}

// Real part of each Pauli letter; Y is stored as J with sigma_y = i J.
Mat pauli_letter(std::uint8_t code) {
  Mat m(2, 2);
  switch (code) {
    case kI: m(0, 0) = 1; m(1, 1) = 1; break;
    case kX: m(0, 1) = 1; m(1, 0) = 1; break;
    case kZ: m(0, 0) = 1; m(1, 1) = -1; break;
    default: m(0, 1) = -1; m(1, 0) = 1; break;  // J
  }
  return m;
}

Mat word_matrix_real_part(const PauliStringSpace::Word& w) {
  Mat m = pauli_letter(w[0]);
  for (std::size_t s = 1; s < w.size(); ++s) m = kron_mat(m, pauli_letter(w[s]));
  return m;
}

}  // namespace

Mat reconstruct_real(const PauliStringSpace& space, const Vec& coeffs, double factor) {
  if (coeffs.size() != space.dim())
    throw DimensionMismatch("reconstruct_real: coefficient size mismatch");
  const std::size_t side = std::size_t{1} << space.sites();
  Mat out(side, side);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (coeffs[i] == 0.0) continue;
    const auto& w = space.words()[i];
    const std::size_t ny = count_y(w);
    if (ny % 2 != 0) throw LinalgError("reconstruct_real: word with odd Y count");
    // i^ny = (-1)^(ny/2) once each Y is written as i*J.
    const double sign = (ny / 2) % 2 == 0 ? 1.0 : -1.0;
    const Mat pm = word_matrix_real_part(w);
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t c = 0; c < side; ++c)
        out(r, c) += factor * sign * coeffs[i] * pm(r, c);
  }
  return out;
}

std::pair<Mat, Mat> reconstruct_hermitian(const PauliStringSpace& space, const Vec& coeffs,
                                          double factor) {
  if (coeffs.size() != space.dim())
    throw DimensionMismatch("reconstruct_hermitian: coefficient size mismatch");
  const std::size_t side = std::size_t{1} << space.sites();
  Mat re(side, side), im(side, side);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (coeffs[i] == 0.0) continue;
    const auto& w = space.words()[i];
    const std::size_t ny = count_y(w);
    const Mat pm = word_matrix_real_part(w);
    const double v = factor * coeffs[i];
    // P = i^ny * (real Kronecker factor)
    Mat* target = ny % 2 == 0 ? &re : &im;
    const double sign = (ny % 4 == 0 || ny % 4 == 1) ? 1.0 : -1.0;
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t c = 0; c < side; ++c) (*target)(r, c) += sign * v * pm(r, c);
  }
  return {re, im};
}

double hermitian_min_eig(const Mat& re, const Mat& im) {
  const std::size_t n = re.rows();
  Mat embed(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      embed(i, j) = re(i, j);
      embed(n + i, n + j) = re(i, j);
      embed(i, n + j) = -im(i, j);
      embed(n + i, j) = im(i, j);
    }
  return min_eigenvalue_symmetric(embed);
}

// ---------------------------------------------------------------------------

GptSystem make_classical(std::size_t n) {
  if (n == 0 || n > 12)
    throw std::invalid_argument("make_classical: dimension must be in 1..12");
  GptSystem sys;
  sys.name = "classical:" + std::to_string(n);
  sys.kind = "classical";
  sys.dim = n;
  for (std::size_t i = 0; i < n; ++i) sys.labels.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(n, 0.0);
    v[i] = 1.0;
    sys.state_generators.push_back(v);
    sys.canonical_state_basis.push_back(v);
    sys.canonical_effect_basis.push_back(v);
  }
  // All 0/1 indicator effects (subsets), unit included.
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) e[i] = 1.0;
    sys.effect_generators.push_back(e);
  }
  sys.unit_effect = Vec(n, 1.0);
  attach_predicates(sys);
  return sys;
}

GptSystem make_rebit(std::size_t frame_size) {
  if (frame_size < 3) throw std::invalid_argument("make_rebit: frame must have >= 3 points");
  GptSystem sys;
  sys.name = "rebit";
  sys.kind = "rebit";
  sys.dim = 3;
  sys.labels = {"I", "X", "Z"};
  for (std::size_t k = 0; k < frame_size; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                      static_cast<double>(frame_size);
    sys.state_generators.push_back({1.0, std::cos(th), std::sin(th)});
    sys.effect_generators.push_back({0.5, 0.5 * std::cos(th), 0.5 * std::sin(th)});
  }
  sys.unit_effect = {1.0, 0.0, 0.0};
  sys.effect_generators.insert(sys.effect_generators.begin(), sys.unit_effect);
  sys.canonical_state_basis = {{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {1.0, 0.0, 1.0}};
  sys.canonical_effect_basis = {{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}};
  attach_predicates(sys);
  return sys;
}

GptSystem make_qubit() {
  GptSystem sys;
  sys.name = "qubit";
  sys.kind = "qubit";
  sys.dim = 4;
  sys.labels = {"I", "X", "Y", "Z"};
  const std::vector<Vec> axes = {{1, 1, 0, 0}, {1, -1, 0, 0}, {1, 0, 1, 0},
                                 {1, 0, -1, 0}, {1, 0, 0, 1}, {1, 0, 0, -1}};
  for (const Vec& a : axes) sys.state_generators.push_back(a);
  sys.unit_effect = {1, 0, 0, 0};
  sys.effect_generators.push_back(sys.unit_effect);
  for (const Vec& a : axes)
    sys.effect_generators.push_back({0.5, 0.5 * a[1], 0.5 * a[2], 0.5 * a[3]});
  sys.canonical_state_basis = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}};
  sys.canonical_effect_basis = {
      {1, 0, 0, 0}, {0.5, 0.5, 0, 0}, {0.5, 0, 0.5, 0}, {0.5, 0, 0, 0.5}};
  attach_predicates(sys);
  return sys;
}

CompositeSystem make_classical_pair(std::size_t na, std::size_t nb) {
  CompositeSystem comp;
  comp.name = "classical:" + std::to_string(na) + "x" + std::to_string(nb);
  comp.kind = "polytopic";
  comp.sys_a = make_classical(na);
  comp.sys_b = make_classical(nb);
  comp.joint = make_classical(na * nb);
  comp.joint.name = comp.name + ":joint";
  comp.state_product = Mat::identity(na * nb);
  comp.effect_product = Mat::identity(na * nb);
  return comp;
}

namespace {
std::size_t bct_index(int i, int j, int s) {
  return static_cast<std::size_t>(4 * i + 2 * j + s);
}
}  // namespace

CompositeSystem make_bct_pair() {
  CompositeSystem comp;
  comp.name = "bct";
  comp.kind = "bct";
  comp.sys_a = make_classical(2);
  comp.sys_b = make_classical(2);

  GptSystem joint;
  joint.name = "bct:joint";
  joint.kind = "bct-joint";
  joint.dim = 8;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int s = 0; s < 2; ++s)
        joint.labels.push_back("(" + std::to_string(i) + std::to_string(j) + ")" +
                               (s == 0 ? "+" : "-"));
  for (std::size_t k = 0; k < 8; ++k) {
    Vec v(8, 0.0);
    v[k] = 1.0;
    joint.state_generators.push_back(v);
  }
  joint.unit_effect = Vec(8, 1.0);

  // Effects: the eight extremal-state indicators plus every lift of a pair
  // of local indicator effects.
  std::vector<Vec> effects;
  for (std::size_t k = 0; k < 8; ++k) {
    Vec e(8, 0.0);
    e[k] = 1.0;
    effects.push_back(e);
  }
  comp.state_product = Mat(8, 4);
  comp.effect_product = Mat(8, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int s = 0; s < 2; ++s) {
        comp.state_product(bct_index(i, j, s), static_cast<std::size_t>(2 * i + j)) = 0.5;
        comp.effect_product(bct_index(i, j, s), static_cast<std::size_t>(2 * i + j)) = 1.0;
      }
  comp.joint = joint;
  for (const Vec& ea : comp.sys_a.effect_generators)
    for (const Vec& eb : comp.sys_b.effect_generators) {
      const Vec lifted = comp.effect_product.apply(kron(ea, eb));
      if (std::none_of(effects.begin(), effects.end(), [&](const Vec& e) {
            return norm_inf(sub(e, lifted)) < 1e-12;
          }))
        effects.push_back(lifted);
    }
  comp.joint.effect_generators = std::move(effects);
  attach_predicates(comp.joint);
  return comp;
}

Mat bct_local_encode(bool flip_bit, bool flip_sign) {
  Mat m(8, 8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int s = 0; s < 2; ++s) {
        const int i2 = flip_bit ? 1 - i : i;
        const int s2 = flip_sign ? 1 - s : s;
        m(bct_index(i2, j, s2), bct_index(i, j, s)) = 1.0;
      }
  return m;
}

namespace {

// Local rebit/qubit letters are indexed I,X,Z (rebit) and I,X,Y,Z (qubit);
// map (local_a, local_b) coefficient pairs into joint word coordinates.
Mat product_map(const GptSystem& a, const GptSystem& b, const PauliStringSpace& sa,
                const PauliStringSpace& sb, const PauliStringSpace& joint) {
  Mat m(joint.dim(), a.dim * b.dim);
  PauliStringSpace::Word w(sa.sites() + sb.sites());
  for (std::size_t i = 0; i < sa.dim(); ++i)
    for (std::size_t j = 0; j < sb.dim(); ++j) {
      const auto& wa = sa.words()[i];
      const auto& wb = sb.words()[j];
      std::copy(wa.begin(), wa.end(), w.begin());
      std::copy(wb.begin(), wb.end(), w.begin() + static_cast<std::ptrdiff_t>(sa.sites()));
      const std::ptrdiff_t k = joint.index_of(w);
      if (k < 0) continue;
      m(static_cast<std::size_t>(k), i * sb.dim() + j) = 1.0;
    }
  return m;
}

}  // namespace

CompositeSystem make_two_rebit(std::size_t frame_size) {
  CompositeSystem comp;
  comp.name = "two-rebit";
  comp.kind = "two-rebit";
  comp.sys_a = make_rebit(frame_size);
  comp.sys_b = make_rebit(frame_size);
  const PauliStringSpace& rb = PauliStringSpace::rebit_chain(1);
  const PauliStringSpace& space = PauliStringSpace::two_rebit();

  GptSystem joint;
  joint.name = "two-rebit:joint";
  joint.kind = "two-rebit";
  joint.dim = space.dim();
  joint.labels = space.labels();
  joint.unit_effect = Vec(space.dim(), 0.0);
  joint.unit_effect[0] = 1.0;
  comp.state_product = product_map(comp.sys_a, comp.sys_b, rb, rb, space);
  comp.effect_product = comp.state_product;
  comp.joint = joint;

  // Joint state generators: frame products plus the holistic pair and the
  // four Bell states (these extend the span to the full 10 dimensions).
  for (const Vec& w : comp.sys_a.state_generators)
    for (const Vec& n : comp.sys_b.state_generators)
      comp.joint.state_generators.push_back(comp.state_product.apply(kron(w, n)));
  for (const char* name :
       {"omega-plus", "omega-minus", "phi-plus", "phi-minus", "psi-plus", "psi-minus"})
    comp.joint.state_generators.push_back(named_states().at(name));

  // Joint effects: unit, lifted frame products, the hiding discriminators
  // and the Bell projectors.
  comp.joint.effect_generators.push_back(comp.joint.unit_effect);
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators) {
      const Vec lifted = comp.effect_product.apply(kron(e, f));
      if (norm_inf(sub(lifted, comp.joint.unit_effect)) < 1e-12) continue;
      comp.joint.effect_generators.push_back(lifted);
    }
  Vec e0(space.dim(), 0.0), e1(space.dim(), 0.0);
  e0[0] = 0.5;
  e0[9] = 0.5;
  e1[0] = 0.5;
  e1[9] = -0.5;
  comp.joint.effect_generators.push_back(e0);
  comp.joint.effect_generators.push_back(e1);
  for (const char* bell : {"phi-plus", "phi-minus", "psi-plus", "psi-minus"})
    comp.joint.effect_generators.push_back(scale(named_states().at(bell), 0.25));
  comp.discrimination_measurement = {e0, e1};
  attach_predicates(comp.joint);
  return comp;
}

CompositeSystem make_qubit_pair() {
  CompositeSystem comp;
  comp.name = "qubit-pair";
  comp.kind = "two-qubit";
  comp.sys_a = make_qubit();
  comp.sys_b = make_qubit();
  const PauliStringSpace& qb = PauliStringSpace::qubit();
  const PauliStringSpace& space = PauliStringSpace::qubit_pair();

  GptSystem joint;
  joint.name = "qubit-pair:joint";
  joint.kind = "two-qubit";
  joint.dim = space.dim();
  joint.labels = space.labels();
  joint.unit_effect = Vec(space.dim(), 0.0);
  joint.unit_effect[0] = 1.0;
  comp.state_product = product_map(comp.sys_a, comp.sys_b, qb, qb, space);
  comp.effect_product = comp.state_product;
  comp.joint = joint;

  for (const Vec& w : comp.sys_a.state_generators)
    for (const Vec& n : comp.sys_b.state_generators)
      comp.joint.state_generators.push_back(comp.state_product.apply(kron(w, n)));
  for (const char* bell : {"phi-plus", "phi-minus", "psi-plus", "psi-minus"})
    comp.joint.state_generators.push_back(iota_coords(named_states().at(bell)));

  comp.joint.effect_generators.push_back(comp.joint.unit_effect);
  for (const Vec& e : comp.sys_a.effect_generators)
    for (const Vec& f : comp.sys_b.effect_generators) {
      const Vec lifted = comp.effect_product.apply(kron(e, f));
      if (norm_inf(sub(lifted, comp.joint.unit_effect)) < 1e-12) continue;
      comp.joint.effect_generators.push_back(lifted);
    }
  for (const char* bell : {"phi-plus", "phi-minus", "psi-plus", "psi-minus"})
    comp.joint.effect_generators.push_back(scale(iota_coords(named_states().at(bell)), 0.25));
  attach_predicates(comp.joint);
  return comp;
}

Mat iota_embed(const Vec& two_rebit_state) {
  return reconstruct_real(PauliStringSpace::two_rebit(), two_rebit_state, 0.25);
}

Mat two_rebit_effect_matrix(const Vec& two_rebit_effect) {
  return reconstruct_real(PauliStringSpace::two_rebit(), two_rebit_effect, 1.0);
}

Vec iota_coords(const Vec& two_rebit_state) {
  const PauliStringSpace& src = PauliStringSpace::two_rebit();
  const PauliStringSpace& dst = PauliStringSpace::qubit_pair();
  if (two_rebit_state.size() != src.dim())
    throw DimensionMismatch("iota_coords: expected 10 coordinates");
  Vec out(dst.dim(), 0.0);
  for (std::size_t i = 0; i < src.dim(); ++i) {
    const std::ptrdiff_t k = dst.index_of(src.words()[i]);
    out[static_cast<std::size_t>(k)] = two_rebit_state[i];
  }
  return out;
}

bool ppt_separable_2x2(const Mat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionMismatch("ppt_separable_2x2: expected a 4x4 matrix");
  // Transpose the second tensor factor.
  Mat pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          pt(static_cast<std::size_t>(2 * a + b), static_cast<std::size_t>(2 * c + d)) =
              rho(static_cast<std::size_t>(2 * a + d), static_cast<std::size_t>(2 * c + b));
  return min_eigenvalue_symmetric(pt) >= -kTolPsd;
}

bool ppt_separable_qubit_pair(const Vec& state) {
  const PauliStringSpace& space = PauliStringSpace::qubit_pair();
  if (state.size() != space.dim())
    throw DimensionMismatch("ppt_separable_qubit_pair: expected 16 coordinates");
  // Partial transposition flips the sign of words whose second letter is Y.
  Vec flipped = state;
  for (std::size_t i = 0; i < space.dim(); ++i)
    if (space.words()[i][1] == kY) flipped[i] = -flipped[i];
  auto [re, im] = reconstruct_hermitian(space, flipped, 0.25);
  return hermitian_min_eig(re, im) >= -kTolPsd;
}

Mat swirl_operator() {
  const PauliStringSpace& space = PauliStringSpace::qubit_pair();
  Mat m(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i)
    if (count_y(space.words()[i]) == 0) m(i, i) = 1.0;
  return m;
}

const std::map<std::string, Vec>& named_states() {
  static const std::map<std::string, Vec> states = [] {
    std::map<std::string, Vec> m;
    auto mk = [](double xx, double xz, double zx, double zz, double yy) {
      Vec v(10, 0.0);
      v[0] = 1.0;
      v[5] = xx;
      v[6] = xz;
      v[7] = zx;
      v[8] = zz;
      v[9] = yy;
      return v;
    };
    m["maximally-mixed"] = mk(0, 0, 0, 0, 0);
    m["omega-plus"] = mk(0, 0, 0, 0, 1);
    m["omega-minus"] = mk(0, 0, 0, 0, -1);
    m["hiding-zero"] = m["omega-plus"];
    m["hiding-one"] = m["omega-minus"];
    m["phi-plus"] = mk(1, 0, 0, 1, -1);
    m["phi-minus"] = mk(-1, 0, 0, 1, 1);
    m["psi-plus"] = mk(1, 0, 0, -1, 1);
    m["psi-minus"] = mk(-1, 0, 0, -1, -1);
    // Pure |+x> (x) |+x| product state.
    Vec prod(10, 0.0);
    prod[0] = 1.0;
    prod[1] = 1.0;  // XI
    prod[3] = 1.0;  // IX
    prod[5] = 1.0;  // XX
    m["product-plus-plus"] = prod;
    return m;
  }();
  return states;
}

std::size_t rqt_carrier_dim(std::size_t levels) { return levels * (levels + 1) / 2; }

std::vector<std::string> composite_names() {
  return {"classical:2", "bct", "two-rebit", "qubit-pair"};
}

CompositeSystem make_composite(const std::string& name) {
  if (name == "bct") return make_bct_pair();
  if (name == "two-rebit") return make_two_rebit();
  if (name == "qubit-pair") return make_qubit_pair();
  if (name.rfind("classical:", 0) == 0) {
    const std::size_t n = static_cast<std::size_t>(std::stoul(name.substr(10)));
    return make_classical_pair(n, n);
  }
  if (name == "rebit" || name == "qubit")
    throw UnsupportedTheoryError("'" + name +
                                 "' is a single system; composite selectors are "
                                 "classical:<n>, bct, two-rebit, qubit-pair");
  throw UnsupportedTheoryError("unknown composite theory: " + name);
}

void attach_predicates(GptSystem& sys) {
  const double tol = kTolNum;
  if (sys.kind == "classical" || sys.kind == "bct-joint") {
    sys.in_normalized_states = [dim = sys.dim, tol](const Vec& v) {
      if (v.size() != dim) return false;
      double total = 0.0;
      for (double x : v) {
        if (x < -tol) return false;
        total += x;
      }
      return std::fabs(total - 1.0) <= 1e-7;
    };
    sys.in_effects = [dim = sys.dim, tol](const Vec& e) {
      if (e.size() != dim) return false;
      return std::all_of(e.begin(), e.end(),
                         [tol](double x) { return x >= -tol && x <= 1.0 + tol; });
    };
  } else if (sys.kind == "rebit") {
    sys.in_normalized_states = [tol](const Vec& v) {
      if (v.size() != 3) return false;
      return std::fabs(v[0] - 1.0) <= 1e-7 &&
             std::sqrt(v[1] * v[1] + v[2] * v[2]) <= 1.0 + 10 * tol;
    };
    sys.in_effects = [tol](const Vec& e) {
      if (e.size() != 3) return false;
      const double r = std::sqrt(e[1] * e[1] + e[2] * e[2]);
      return r <= e[0] + tol && r <= 1.0 - e[0] + tol;
    };
  } else if (sys.kind == "qubit") {
    sys.in_normalized_states = [tol](const Vec& v) {
      if (v.size() != 4) return false;
      return std::fabs(v[0] - 1.0) <= 1e-7 &&
             std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]) <= 1.0 + 10 * tol;
    };
    sys.in_effects = [tol](const Vec& e) {
      if (e.size() != 4) return false;
      const double r = std::sqrt(e[1] * e[1] + e[2] * e[2] + e[3] * e[3]);
      return r <= e[0] + tol && r <= 1.0 - e[0] + tol;
    };
  } else if (sys.kind == "two-rebit") {
    sys.in_normalized_states = [](const Vec& v) {
      if (v.size() != 10 || std::fabs(v[0] - 1.0) > 1e-7) return false;
      return min_eigenvalue_symmetric(iota_embed(v)) >= -kTolPsd;
    };
    sys.in_effects = [](const Vec& e) {
      if (e.size() != 10) return false;
      const Mat m = two_rebit_effect_matrix(e);
      const auto eigs = symmetric_eigenvalues(m);
      return eigs.front() >= -kTolPsd && eigs.back() <= 1.0 + kTolPsd;
    };
  } else if (sys.kind == "two-qubit") {
    sys.in_normalized_states = [](const Vec& v) {
      if (v.size() != 16 || std::fabs(v[0] - 1.0) > 1e-7) return false;
      auto [re, im] = reconstruct_hermitian(PauliStringSpace::qubit_pair(), v, 0.25);
      return hermitian_min_eig(re, im) >= -kTolPsd;
    };
    sys.in_effects = [](const Vec& e) {
      if (e.size() != 16) return false;
      auto [re, im] = reconstruct_hermitian(PauliStringSpace::qubit_pair(), e, 1.0);
      const double lo = hermitian_min_eig(re, im);
      Mat re2 = Mat::identity(4) - re;
      const double hi = hermitian_min_eig(re2, im.scaled(-1.0));
      return lo >= -kTolPsd && hi >= -kTolPsd;
    };
  } else {
    throw UnsupportedTheoryError("attach_predicates: unknown system kind: " + sys.kind);
  }
}

CompositeSystem load_composite(const nlohmann::json& j) {
  CompositeSystem comp = composite_from_json(j);
  attach_predicates(comp.sys_a);
  attach_predicates(comp.sys_b);
  attach_predicates(comp.joint);
  return comp;
}

}  // namespace gpttomo
