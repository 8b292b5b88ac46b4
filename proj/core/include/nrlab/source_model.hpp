#pragma once
#include <memory>
#include <string>
#include <vector>

#include "nrlab/momentum_grid.hpp"
#include "nrlab/spinor_algebra.hpp"

namespace nrlab {

enum class SourceTag {
  schrodinger,
  kg_plus,
  kg_minus,
  kg_mixed,
  dirac,
  fw,
  canonical,
};

std::string to_string(SourceTag tag);

// Common packet parameters (acceptance defaults in natural units).
struct PacketSpec {
  Vec3 p_center{0.3, 0.0, 0.0};
  double support_radius = 0.15;
  double smoothness = 2.0;
  Vec3 x_offset{0.0, 0.0, 0.0};
  double epsilon = 0.5;  // Schrodinger band limit p_max = (1 - eps) m c
};

struct ModeSpec {
  std::shared_ptr<const AmplitudeBase> amplitude;
  std::shared_ptr<const MomentumAmplitude> bump;  // set when plain bump family
  DispersionKind kind = DispersionKind::schrodinger;
};

struct ComponentSpec {
  std::vector<ModeSpec> modes;  // summed into one wave-function component
};

// Momentum-space description of a wave-equation source: which scalar branches
// exist, how each evolves, and how the current is assembled from them.
class SourceModel {
 public:
  SourceTag tag = SourceTag::schrodinger;
  Units units;
  double spin = 0.0;        // canonical only
  bool upper_block = true;  // fw only
  std::vector<ComponentSpec> components;

  double p_cap = 0.0;            // band-limit budget (carried through transforms)
  double sigma_x = 0.0;          // per-axis RMS position width of the base packet
  bool oracle_ok = false;        // momentum-space moment oracle available
  // base envelope shared by every component (box sizing, chirp halo)
  std::shared_ptr<const MomentumAmplitude> base_bump;
  Box3 momentum_support{};       // union of mode support boxes
  double max_group_speed = 0.0;  // sup |v_group| over the support
  double slow_energy_max = 0.0;  // sup of the slow dispersion over the support

  std::size_t component_count() const { return components.size(); }
};

SourceModel make_schrodinger(const PacketSpec &packet, const Units &units);
// sign: +1, -1, or 0 for the mixed state with |w_plus|^2 + |w_minus|^2 = 1.
SourceModel make_kg(const PacketSpec &packet, const Units &units, int sign,
                    double mix_weight_plus = 0.0);
// Constant 4-spinor coefficients; the packet populates both energy branches
// through the momentum-space projectors (this is what zitters).
SourceModel make_dirac(const PacketSpec &packet, const Units &units, const Spinor4 &coeffs);
SourceModel make_fw(const PacketSpec &packet, const Units &units, bool upper_block,
                    const std::array<cplx, 2> &coeffs);
SourceModel make_canonical(const PacketSpec &packet, const Units &units, double spin,
                           const std::vector<cplx> &coeffs);

// A source realized on a concrete momentum grid: per-mode node values ready
// for the evaluators. x_reach bounds |x - v t| over intended evaluations.
struct SourceRealization {
  std::shared_ptr<const MomentumGrid> pgrid;
  // per component, per mode
  std::vector<std::vector<ScalarMode>> components;
  const SourceModel *model = nullptr;
};

SourceRealization realize(const SourceModel &model, double x_reach, int base_nodes = 16);

}  // namespace nrlab
