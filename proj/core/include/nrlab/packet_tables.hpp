#pragma once
#include <memory>
#include <vector>

#include "nrlab/momentum_grid.hpp"
#include "nrlab/wavepacket.hpp"

namespace nrlab {

// Position grid with an optional ellipsoidal clip. The packed node set is the
// evaluation/integration domain of the bulk engines: for each (ix, iy) row the
// retained z indices form one contiguous interval. Packed order is the grid
// order restricted to retained nodes, which is the documented reduction order.
class ClippedGrid {
 public:
  explicit ClippedGrid(std::shared_ptr<const QuadratureGrid3D> grid);  // no clip
  ClippedGrid(std::shared_ptr<const QuadratureGrid3D> grid, const Vec3 &center,
              const Vec3 &radii);

  const QuadratureGrid3D &grid() const { return *grid_; }
  std::size_t size() const { return packed_count_; }

  // position / quadrature weight of a packed node
  Vec3 node(std::size_t packed) const;
  double weight(std::size_t packed) const;

  // row structure used by the contraction engine
  int nx() const { return grid_->n_axis(0); }
  int ny() const { return grid_->n_axis(1); }
  int nz() const { return grid_->n_axis(2); }
  int row_z_begin(int ix, int iy) const { return rows_[ix * ny() + iy][0]; }
  int row_z_end(int ix, int iy) const { return rows_[ix * ny() + iy][1]; }
  std::size_t row_offset(int ix, int iy) const { return offsets_[ix * ny() + iy]; }

  bool clipped() const { return clipped_; }
  const Vec3 &clip_center() const { return center_; }
  const Vec3 &clip_radii() const { return radii_; }

 private:
  std::shared_ptr<const QuadratureGrid3D> grid_;
  std::vector<std::array<int, 2>> rows_;
  std::vector<std::size_t> offsets_;
  std::size_t packed_count_ = 0;
  bool clipped_ = false;
  Vec3 center_{}, radii_{};
};

// Wave-function channels of one mode on all packed nodes at one fixed time.
struct GridWave {
  std::vector<cplx> value;
  std::array<std::vector<cplx>, 3> grad;
  std::vector<cplx> dt;
  std::vector<cplx> dt2;
};

// Fixed-time bulk evaluation by tensor contraction over the momentum grid
// (stage sums are fixed-order). Exact in t. Much faster than per-node sums.
void eval_mode_on_grid(const MomentumGrid &pgrid, const ScalarMode &mode,
                       const ClippedGrid &xgrid, double t, unsigned channels, GridWave &out);

// Retarded/advanced-time bulk evaluator. Time dependence within a slab of
// width dt is carried by a Taylor table of slow-phase time derivatives built
// once per slab by tensor contraction; the rest-mass rotation is applied
// exactly per evaluation. Slabs are streamed: load_slab(s) builds the tables
// for every registered mode, eval() serves arbitrary times inside that slab.
class SlabTables {
 public:
  SlabTables(const MomentumGrid &pgrid, std::vector<const ScalarMode *> modes,
             std::shared_ptr<const ClippedGrid> xgrid, double t_min, double t_max,
             double target_eps, unsigned channels);

  int slab_count() const { return static_cast<int>(centers_.size()); }
  double slab_lo(int s) const { return edges_[s]; }
  double slab_hi(int s) const { return edges_[s + 1]; }
  int slab_of(double t) const;

  // Builds tables for slab s (all modes). Verifies a few probe nodes against
  // the direct evaluator and throws GuardError on mismatch.
  void load_slab(int s);

  // Channels of mode m at packed node, time t inside the loaded slab.
  void eval(int mode, std::size_t node, double t, ModePointEval &out) const;

  std::size_t nodes() const { return xgrid_->size(); }
  const ClippedGrid &xgrid() const { return *xgrid_; }

 private:
  const MomentumGrid &pgrid_;
  std::vector<const ScalarMode *> modes_;
  std::shared_ptr<const ClippedGrid> xgrid_;
  unsigned channels_;
  int order_ = 12;  // Taylor order K
  std::vector<double> centers_;
  std::vector<double> edges_;
  int loaded_ = -1;

  // tables_[mode][channel][k] -> packed node array; channel: 0=value,1..3=grad
  std::vector<std::vector<std::vector<std::vector<cplx>>>> tables_;

  void probe_check(int s) const;
};

}  // namespace nrlab
