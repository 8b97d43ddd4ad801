#ifndef SUMRULE_RNG_HPP
#define SUMRULE_RNG_HPP

#include <complex>
#include <cstdint>

namespace sumrule {

// Counter-based generator: output k = mix(key ^ k) for an incrementing
// counter, so a stream is a pure function of (seed, stream id). Substreams
// derived from (key, index) are independent for all practical purposes and
// make replica-parallel runs reproducible regardless of scheduling.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Child stream; does not disturb this stream's counter.
  Rng substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  double uniform_symmetric();          // (-1, 1)
  double normal();                     // N(0, 1), polar method
  double gamma(double shape);          // Gamma(shape, 1), shape >= 0.5
  double chi(double dof);              // chi distribution, dof >= 1
  std::complex<double> unit_circle();  // uniform on |z| = 1

  // alpha with |alpha|^2 ~ Beta(1, m) and uniform phase (Killip-Nenciu
  // coefficient marginal for Haar unitaries).
  std::complex<double> disk_beta(int m);

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sumrule

#endif
