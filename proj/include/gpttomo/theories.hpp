#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gpttomo/gpt_model.hpp"
#include "gpttomo/linalg.hpp"

namespace gpttomo {

/// Coordinate space of Pauli-word coefficients over a chain of two-level
/// sites. For rebit chains only words with an even number of Y letters are
/// carried (those are the real symmetric directions); for qubit spaces all
/// words appear. States use the convention rho = 2^-n * sum_s q_s P_s, so a
/// normalized state has leading coefficient 1; effects use M = sum_s r_s P_s,
/// making the probability pairing the plain dot product of coefficients.
class PauliStringSpace {
 public:
  using Word = std::vector<std::uint8_t>;  // 0=I, 1=X, 2=Z, 3=Y

  static const PauliStringSpace& rebit_chain(std::size_t sites);
  static const PauliStringSpace& two_rebit();  // documented coordinate order
  static const PauliStringSpace& qubit();
  static const PauliStringSpace& qubit_pair();

  std::size_t sites() const { return sites_; }
  std::size_t dim() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  std::ptrdiff_t index_of(const Word& w) const;
  std::string label(std::size_t idx) const;
  std::vector<std::string> labels() const;

 private:
  PauliStringSpace(std::size_t sites, std::vector<Word> words);
  std::size_t sites_;
  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
};

/// Coefficients of the tensor product, laid out in `out`.
Vec tensor_coords(const PauliStringSpace& sa, const Vec& a, const PauliStringSpace& sb,
                  const Vec& b, const PauliStringSpace& out);

/// Applies an effect on the given sites of a joint state, returning the
/// conditional state coefficients on the remaining sites (in out_space
/// order). effect_sites indexes into the full space's site list.
Vec contract_coords(const PauliStringSpace& full, const Vec& state,
                    const std::vector<std::size_t>& effect_sites,
                    const PauliStringSpace& eff_space, const Vec& effect,
                    const PauliStringSpace& out_space);

/// Real matrix `factor * sum_s coeffs_s P_s` (valid when every word has an
/// even number of Y letters).
Mat reconstruct_real(const PauliStringSpace& space, const Vec& coeffs, double factor);

/// Hermitian matrix as (real, imaginary) parts, for spaces with odd-Y words.
std::pair<Mat, Mat> reconstruct_hermitian(const PauliStringSpace& space, const Vec& coeffs,
                                          double factor);

/// Smallest eigenvalue of the Hermitian matrix re + i*im.
double hermitian_min_eig(const Mat& re, const Mat& im);

// ---------------------------------------------------------------------------
// Theory constructors.

/// n-outcome classical system: the probability simplex with all 0/1
/// indicator effects.
GptSystem make_classical(std::size_t n);

/// Two-level real-quantum system in (I, X, Z) coordinates: states are the
/// unit disk, plus a frame of `frame_size` equally spaced boundary points.
GptSystem make_rebit(std::size_t frame_size = 8);

GptSystem make_qubit();

CompositeSystem make_classical_pair(std::size_t na, std::size_t nb);

/// Pair of classical bits whose composite carries an extra sign degree of
/// freedom invisible to product effects: 8 extremal joint states |(ij)^s).
CompositeSystem make_bct_pair();

/// Two rebits; joint coordinates in the documented 10-label order with the
/// YY direction holistic.
CompositeSystem make_two_rebit(std::size_t frame_size = 8);

CompositeSystem make_qubit_pair();

/// Alice-side reversible map on the BCT joint: optionally flips her bit and
/// the holistic sign.
Mat bct_local_encode(bool flip_bit, bool flip_sign);

/// Inclusion of a two-rebit state into the 4x4 density-matrix picture.
Mat iota_embed(const Vec& two_rebit_state);

/// Effect-side reconstruction (no trace factor).
Mat two_rebit_effect_matrix(const Vec& two_rebit_effect);

/// Inclusion of two-rebit coordinates into the 16 qubit-pair coordinates.
Vec iota_coords(const Vec& two_rebit_state);

/// Peres-Horodecki test on a 4x4 real symmetric density matrix; exact for
/// two qubits.
bool ppt_separable_2x2(const Mat& rho);

/// Same test on qubit-pair Pauli coordinates (handles complex states).
bool ppt_separable_qubit_pair(const Vec& qubit_pair_state);

/// Map on qubit-pair coordinates zeroing every word with a Y letter;
/// restricted to embedded two-rebit states it reproduces the projector onto
/// the product span.
Mat swirl_operator();

/// Named two-rebit states: omega-plus/minus, the four Bell states, the
/// maximally mixed state, the hiding pair and a pure product state.
const std::map<std::string, Vec>& named_states();

/// Carrier-space dimension of a d-level real-quantum system: d(d+1)/2.
std::size_t rqt_carrier_dim(std::size_t levels);

// Registry ------------------------------------------------------------------

std::vector<std::string> composite_names();

/// Resolves "classical:<n>", "bct", "two-rebit" or "qubit-pair".
CompositeSystem make_composite(const std::string& name);

/// Reinstalls the membership predicates implied by a system's `kind`.
void attach_predicates(GptSystem& sys);

/// composite_from_json plus predicate reattachment.
CompositeSystem load_composite(const nlohmann::json& j);

}  // namespace gpttomo
