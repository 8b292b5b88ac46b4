#include "nrlab/packet_tables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nrlab/errors.hpp"
#include "nrlab/threading.hpp"

namespace nrlab {

namespace {

double inv_measure(const Units &u) {
  const double tph = 2.0 * std::numbers::pi * u.hbar;
  return 1.0 / (tph * tph * tph);
}

// Phase tables, transposed so the stage dot products run over contiguous
// memory: P[l * np + j] = exp(i p_j x_l / hbar), optionally times i p_j/hbar.
void build_phase_table(const std::vector<double> &pnodes, const std::vector<double> &xnodes,
                       double hbar, bool momentum_factor, std::vector<cplx> &out) {
  const std::size_t np = pnodes.size(), nx = xnodes.size();
  out.resize(np * nx);
  for (std::size_t l = 0; l < nx; ++l)
    for (std::size_t j = 0; j < np; ++j) {
      cplx v = std::polar(1.0, pnodes[j] * xnodes[l] / hbar);
      if (momentum_factor) v *= cplx(0.0, pnodes[j] / hbar);
      out[l * np + j] = v;
    }
}

struct StagePlan {
  int n1, n2, n3;  // momentum axis sizes
  int nx, ny, nz;  // position axis sizes
  std::vector<cplx> p1, p1g, p2, p2g, p3, p3g;
};

StagePlan make_plan(const MomentumGrid &pgrid, const ClippedGrid &xg) {
  StagePlan plan;
  const QuadratureGrid3D &pg = pgrid.grid();
  const QuadratureGrid3D &xgg = xg.grid();
  plan.n1 = pg.n_axis(0);
  plan.n2 = pg.n_axis(1);
  plan.n3 = pg.n_axis(2);
  plan.nx = xgg.n_axis(0);
  plan.ny = xgg.n_axis(1);
  plan.nz = xgg.n_axis(2);
  const double hbar = pgrid.units().hbar;
  build_phase_table(pg.axis_nodes[0], xgg.axis_nodes[0], hbar, false, plan.p1);
  build_phase_table(pg.axis_nodes[0], xgg.axis_nodes[0], hbar, true, plan.p1g);
  build_phase_table(pg.axis_nodes[1], xgg.axis_nodes[1], hbar, false, plan.p2);
  build_phase_table(pg.axis_nodes[1], xgg.axis_nodes[1], hbar, true, plan.p2g);
  build_phase_table(pg.axis_nodes[2], xgg.axis_nodes[2], hbar, false, plan.p3);
  build_phase_table(pg.axis_nodes[2], xgg.axis_nodes[2], hbar, true, plan.p3g);
  return plan;
}

// Three-stage tensor contraction of one coefficient array into packed node
// arrays: value and optionally the three gradient channels.
// coeff layout is j1-fastest: index (j2*n3 + j3)*n1 + j1.
void contract(const StagePlan &plan, const ClippedGrid &xg, const std::vector<cplx> &coeff,
              bool want_grad, std::vector<cplx> *out_value, std::vector<cplx> *out_gx,
              std::vector<cplx> *out_gy, std::vector<cplx> *out_gz) {
  const int n1 = plan.n1, n2 = plan.n2, n3 = plan.n3;
  const int nx = plan.nx, ny = plan.ny;

  // stage 1: (j2, j3) rows -> l1
  const std::size_t rows1 = static_cast<std::size_t>(n2) * n3;
  std::vector<cplx> t1(rows1 * nx);
  std::vector<cplx> t1g(want_grad ? rows1 * nx : 0);
  parallel_for(rows1, [&](std::size_t row) {
    const cplx *c = coeff.data() + row * n1;
    for (int l1 = 0; l1 < nx; ++l1) {
      const cplx *ph = plan.p1.data() + static_cast<std::size_t>(l1) * n1;
      cplx acc = 0.0;
      for (int j = 0; j < n1; ++j) acc += c[j] * ph[j];
      t1[row * nx + l1] = acc;
      if (want_grad) {
        const cplx *phg = plan.p1g.data() + static_cast<std::size_t>(l1) * n1;
        cplx accg = 0.0;
        for (int j = 0; j < n1; ++j) accg += c[j] * phg[j];
        t1g[row * nx + l1] = accg;
      }
    }
  });

  // stage 2: (j3, l1) rows -> l2; T1 -> {plain, ip2}, T1g -> plain
  const std::size_t rows2 = static_cast<std::size_t>(n3) * nx;
  std::vector<cplx> t2a(rows2 * ny);
  std::vector<cplx> t2b(want_grad ? rows2 * ny : 0);
  std::vector<cplx> t2g(want_grad ? rows2 * ny : 0);
  parallel_for(rows2, [&](std::size_t row) {
    const int j3 = static_cast<int>(row) / nx;
    const int l1 = static_cast<int>(row) % nx;
    thread_local std::vector<cplx> buf, bufg;
    buf.resize(n2);
    if (want_grad) bufg.resize(n2);
    for (int j2 = 0; j2 < n2; ++j2) {
      const std::size_t src = (static_cast<std::size_t>(j2) * n3 + j3) * nx + l1;
      buf[j2] = t1[src];
      if (want_grad) bufg[j2] = t1g[src];
    }
    for (int l2 = 0; l2 < ny; ++l2) {
      const cplx *ph = plan.p2.data() + static_cast<std::size_t>(l2) * n2;
      cplx acc = 0.0;
      for (int j = 0; j < n2; ++j) acc += buf[j] * ph[j];
      t2a[row * ny + l2] = acc;
      if (want_grad) {
        const cplx *phg = plan.p2g.data() + static_cast<std::size_t>(l2) * n2;
        cplx accb = 0.0, accg = 0.0;
        for (int j = 0; j < n2; ++j) {
          accb += buf[j] * phg[j];
          accg += bufg[j] * ph[j];
        }
        t2b[row * ny + l2] = accb;
        t2g[row * ny + l2] = accg;
      }
    }
  });

  // stage 3: (l1, l2) rows -> retained l3 interval
  const std::size_t rows3 = static_cast<std::size_t>(nx) * ny;
  parallel_for(rows3, [&](std::size_t row) {
    const int l1 = static_cast<int>(row) / ny;
    const int l2 = static_cast<int>(row) % ny;
    const int zb = xg.row_z_begin(l1, l2), ze = xg.row_z_end(l1, l2);
    if (zb >= ze) return;
    thread_local std::vector<cplx> ba, bb, bg;
    ba.resize(n3);
    if (want_grad) {
      bb.resize(n3);
      bg.resize(n3);
    }
    for (int j3 = 0; j3 < n3; ++j3) {
      const std::size_t src = (static_cast<std::size_t>(j3) * nx + l1) * ny + l2;
      ba[j3] = t2a[src];
      if (want_grad) {
        bb[j3] = t2b[src];
        bg[j3] = t2g[src];
      }
    }
    std::size_t off = xg.row_offset(l1, l2);
    for (int l3 = zb; l3 < ze; ++l3, ++off) {
      const cplx *ph = plan.p3.data() + static_cast<std::size_t>(l3) * n3;
      cplx acc = 0.0;
      for (int j = 0; j < n3; ++j) acc += ba[j] * ph[j];
      (*out_value)[off] = acc;
      if (want_grad) {
        const cplx *phg = plan.p3g.data() + static_cast<std::size_t>(l3) * n3;
        cplx az = 0.0, ay = 0.0, ax = 0.0;
        for (int j = 0; j < n3; ++j) {
          az += ba[j] * phg[j];
          ay += bb[j] * ph[j];
          ax += bg[j] * ph[j];
        }
        (*out_gz)[off] = az;
        (*out_gy)[off] = ay;
        (*out_gx)[off] = ax;
      }
    }
  });
}

// Coefficient array in j1-fastest order: mu * w_j * a_j * factor(j).
template <class Factor>
void build_coeff(const MomentumGrid &pgrid, const ScalarMode &mode, Factor &&factor,
                 std::vector<cplx> &out) {
  const QuadratureGrid3D &pg = pgrid.grid();
  const int n1 = pg.n_axis(0), n2 = pg.n_axis(1), n3 = pg.n_axis(2);
  out.resize(static_cast<std::size_t>(n1) * n2 * n3);
  const double mu = inv_measure(pgrid.units());
  for (int j1 = 0; j1 < n1; ++j1)
    for (int j2 = 0; j2 < n2; ++j2)
      for (int j3 = 0; j3 < n3; ++j3) {
        const std::size_t flat = (static_cast<std::size_t>(j1) * n2 + j2) * n3 + j3;
        const std::size_t dst = (static_cast<std::size_t>(j2) * n3 + j3) * n1 + j1;
        out[dst] = mu * pgrid.weights()[flat] * mode.amplitude[flat] * factor(flat);
      }
}

}  // namespace

ClippedGrid::ClippedGrid(std::shared_ptr<const QuadratureGrid3D> grid)
    : grid_(std::move(grid)) {
  const int nx = grid_->n_axis(0), ny = grid_->n_axis(1), nz = grid_->n_axis(2);
  rows_.assign(static_cast<std::size_t>(nx) * ny, {0, nz});
  offsets_.resize(rows_.size() + 1);
  for (std::size_t r = 0; r <= rows_.size(); ++r) offsets_[r] = r * nz;
  packed_count_ = static_cast<std::size_t>(nx) * ny * nz;
}

ClippedGrid::ClippedGrid(std::shared_ptr<const QuadratureGrid3D> grid, const Vec3 &center,
                         const Vec3 &radii)
    : grid_(std::move(grid)), clipped_(true), center_(center), radii_(radii) {
  const int nx = grid_->n_axis(0), ny = grid_->n_axis(1), nz = grid_->n_axis(2);
  rows_.resize(static_cast<std::size_t>(nx) * ny);
  offsets_.assign(rows_.size() + 1, 0);
  const auto &ax = grid_->axis_nodes[0];
  const auto &ay = grid_->axis_nodes[1];
  const auto &az = grid_->axis_nodes[2];
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) {
      const double qx = (ax[ix] - center.x) / radii.x;
      const double qy = (ay[iy] - center.y) / radii.y;
      const double rem = 1.0 - qx * qx - qy * qy;
      int zb = 0, ze = 0;
      if (rem > 0.0) {
        const double half = radii.z * std::sqrt(rem);
        const double zlo = center.z - half, zhi = center.z + half;
        zb = static_cast<int>(std::lower_bound(az.begin(), az.end(), zlo) - az.begin());
        ze = static_cast<int>(std::upper_bound(az.begin(), az.end(), zhi) - az.begin());
      }
      rows_[static_cast<std::size_t>(ix) * ny + iy] = {zb, ze};
    }
  for (std::size_t r = 0; r < rows_.size(); ++r)
    offsets_[r + 1] = offsets_[r] + std::max(0, rows_[r][1] - rows_[r][0]);
  packed_count_ = offsets_.back();
}

Vec3 ClippedGrid::node(std::size_t packed) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), packed);
  const std::size_t row = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  const int iz = rows_[row][0] + static_cast<int>(packed - offsets_[row]);
  const int iy = static_cast<int>(row) % ny();
  const int ix = static_cast<int>(row) / ny();
  return {grid_->axis_nodes[0][ix], grid_->axis_nodes[1][iy], grid_->axis_nodes[2][iz]};
}

double ClippedGrid::weight(std::size_t packed) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), packed);
  const std::size_t row = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  const int iz = rows_[row][0] + static_cast<int>(packed - offsets_[row]);
  const int iy = static_cast<int>(row) % ny();
  const int ix = static_cast<int>(row) / ny();
  return grid_->axis_weights[0][ix] * grid_->axis_weights[1][iy] * grid_->axis_weights[2][iz];
}

void eval_mode_on_grid(const MomentumGrid &pgrid, const ScalarMode &mode,
                       const ClippedGrid &xgrid, double t, unsigned channels, GridWave &out) {
  const StagePlan plan = make_plan(pgrid, xgrid);
  const std::size_t n = xgrid.size();
  const double hbar = pgrid.units().hbar;
  const int s = mode.sign;
  const bool want_grad = channels & kGrad;

  std::vector<cplx> coeff;
  auto phase0 = [&](std::size_t flat) {
    const double E = mode.rest_energy + mode.slow_energy[flat];
    return std::polar(1.0, -s * E * t / hbar);
  };

  out.value.assign(n, cplx(0.0));
  if (want_grad)
    for (auto &g : out.grad) g.assign(n, cplx(0.0));
  build_coeff(pgrid, mode, phase0, coeff);
  contract(plan, xgrid, coeff, want_grad, &out.value, &out.grad[0], &out.grad[1], &out.grad[2]);

  if (channels & kDt) {
    out.dt.assign(n, cplx(0.0));
    build_coeff(
        pgrid, mode,
        [&](std::size_t flat) {
          const double E = mode.rest_energy + mode.slow_energy[flat];
          return phase0(flat) * cplx(0.0, -s * E / hbar);
        },
        coeff);
    contract(plan, xgrid, coeff, false, &out.dt, nullptr, nullptr, nullptr);
  }
  if (channels & kDt2) {
    out.dt2.assign(n, cplx(0.0));
    build_coeff(
        pgrid, mode,
        [&](std::size_t flat) {
          const double E = mode.rest_energy + mode.slow_energy[flat];
          const cplx de(0.0, -s * E / hbar);
          return phase0(flat) * de * de;
        },
        coeff);
    contract(plan, xgrid, coeff, false, &out.dt2, nullptr, nullptr, nullptr);
  }
}

SlabTables::SlabTables(const MomentumGrid &pgrid, std::vector<const ScalarMode *> modes,
                       std::shared_ptr<const ClippedGrid> xgrid, double t_min, double t_max,
                       double target_eps, unsigned channels)
    : pgrid_(pgrid), modes_(std::move(modes)), xgrid_(std::move(xgrid)), channels_(channels) {
  if (modes_.empty()) throw std::invalid_argument("SlabTables: no modes");
  if (!(t_max > t_min)) throw std::invalid_argument("SlabTables: empty time window");
  if (channels_ & kDt2) channels_ |= kDt;  // dt2 tables build on the dt chain

  double emax = 0.0;
  for (const ScalarMode *m : modes_)
    for (double e : m->slow_energy) emax = std::max(emax, e);
  const double hbar = pgrid_.units().hbar;
  // half-width phase theta = Emax dt / (2 hbar) ~ 6 balances slab count
  // against Taylor order; the rest-mass phase is handled exactly elsewhere.
  const double theta_target = 6.0;
  double dt = emax > 0.0 ? 2.0 * theta_target * hbar / emax : (t_max - t_min);
  const int nslabs = std::max(1, static_cast<int>(std::ceil((t_max - t_min) / dt)));
  dt = (t_max - t_min) / nslabs;
  const double th = emax * 0.5 * dt / hbar;
  int K = 4;
  double term = th * th * th * th * th / 120.0;  // th^5/5!
  for (int k = 5; k <= 80; ++k) {
    K = k;
    if (term < target_eps / 3.0) break;
    term *= th / (k + 1);
  }
  order_ = K;
  edges_.resize(nslabs + 1);
  centers_.resize(nslabs);
  for (int i = 0; i <= nslabs; ++i) edges_[i] = t_min + dt * i;
  for (int i = 0; i < nslabs; ++i) centers_[i] = 0.5 * (edges_[i] + edges_[i + 1]);
}

int SlabTables::slab_of(double t) const {
  const double dt = edges_[1] - edges_[0];
  const int s = static_cast<int>((t - edges_[0]) / dt);
  return std::clamp(s, 0, slab_count() - 1);
}

void SlabTables::load_slab(int s) {
  const StagePlan plan = make_plan(pgrid_, *xgrid_);
  const std::size_t n = xgrid_->size();
  const double hbar = pgrid_.units().hbar;
  const double tau = centers_[s];
  const bool want_grad = channels_ & kGrad;
  int kmax = order_;
  if (channels_ & kDt) kmax += 1;
  if (channels_ & kDt2) kmax += 1;

  tables_.assign(modes_.size(), {});
  std::vector<cplx> coeff;
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    const ScalarMode &mode = *modes_[m];
    const int nch = want_grad ? 4 : 1;
    tables_[m].assign(nch, std::vector<std::vector<cplx>>(kmax + 1));
    build_coeff(
        pgrid_, mode,
        [&](std::size_t flat) {
          return std::polar(1.0, -mode.sign * mode.slow_energy[flat] * tau / hbar);
        },
        coeff);
    const QuadratureGrid3D &pg = pgrid_.grid();
    const int n1 = pg.n_axis(0), n2 = pg.n_axis(1), n3 = pg.n_axis(2);
    for (int k = 0; k <= kmax; ++k) {
      for (int ch = 0; ch < nch; ++ch) tables_[m][ch][k].assign(n, cplx(0.0));
      if (want_grad)
        contract(plan, *xgrid_, coeff, true, &tables_[m][0][k], &tables_[m][1][k],
                 &tables_[m][2][k], &tables_[m][3][k]);
      else
        contract(plan, *xgrid_, coeff, false, &tables_[m][0][k], nullptr, nullptr, nullptr);
      if (k < kmax) {
        // next Taylor coefficient: multiply by (-i s slow/hbar) / (k+1)
        for (int j1 = 0; j1 < n1; ++j1)
          for (int j2 = 0; j2 < n2; ++j2)
            for (int j3 = 0; j3 < n3; ++j3) {
              const std::size_t flat = (static_cast<std::size_t>(j1) * n2 + j2) * n3 + j3;
              const std::size_t dst = (static_cast<std::size_t>(j2) * n3 + j3) * n1 + j1;
              coeff[dst] *=
                  cplx(0.0, -mode.sign * mode.slow_energy[flat] / hbar) / double(k + 1);
            }
      }
    }
  }
  loaded_ = s;
  probe_check(s);
}

void SlabTables::eval(int mode, std::size_t node, double t, ModePointEval &out) const {
  const double hbar = pgrid_.units().hbar;
  const ScalarMode &md = *modes_[mode];
  const double delta = t - centers_[loaded_];
  const auto &tab = tables_[mode];
  const bool want_grad = channels_ & kGrad;
  const bool want_dt = channels_ & kDt;
  const bool want_dt2 = channels_ & kDt2;
  const int K0 = order_;

  // Tables store V_k/k!; the series and its time derivatives follow from
  // shifted tables: dS uses V_(k+1)/k! = tab[k+1] (k+1), d2S uses
  // tab[k+2] (k+1)(k+2).
  cplx s0 = 0.0, s1 = 0.0, s2 = 0.0;
  cplx g0[3] = {}, g1[3] = {};
  double w = 1.0;
  for (int k = 0; k <= K0; ++k) {
    s0 += tab[0][k][node] * w;
    if (want_grad)
      for (int a = 0; a < 3; ++a) g0[a] += tab[1 + a][k][node] * w;
    if (want_dt) {
      const double wd = w * (k + 1);
      s1 += tab[0][k + 1][node] * wd;
      if (want_grad)
        for (int a = 0; a < 3; ++a) g1[a] += tab[1 + a][k + 1][node] * wd;
      if (want_dt2) s2 += tab[0][k + 2][node] * (wd * (k + 2));
    }
    w *= delta;
  }

  const cplx rest_phase = std::polar(1.0, -md.sign * md.rest_energy * t / hbar);
  const cplx mu(0.0, -md.sign * md.rest_energy / hbar);
  out.value = rest_phase * s0;
  if (want_grad)
    for (int a = 0; a < 3; ++a) out.grad[a] = rest_phase * g0[a];
  if (want_dt) {
    out.dt = rest_phase * (s1 + mu * s0);
    if (want_grad)
      for (int a = 0; a < 3; ++a) out.dtgrad[a] = rest_phase * (g1[a] + mu * g0[a]);
  }
  if (want_dt2) out.dt2 = rest_phase * (s2 + 2.0 * mu * s1 + mu * mu * s0);
}

void SlabTables::probe_check(int s) const {
  const std::size_t n = xgrid_->size();
  const double t0 = centers_[s];
  const double half = 0.5 * (edges_[s + 1] - edges_[s]);
  const std::size_t picks[3] = {0, n / 2, n - 1};
  const double times[2] = {t0 + 0.45 * half, t0 - 0.8 * half};
  const unsigned ch = kValue | ((channels_ & kGrad) ? kGrad : 0u);
  double scale = 0.0;
  struct Probe {
    ModePointEval direct, fast;
  };
  std::vector<Probe> probes;
  for (std::size_t m = 0; m < modes_.size(); ++m)
    for (std::size_t node : picks)
      for (double t : times) {
        Probe p;
        p.direct = eval_mode_point(pgrid_, *modes_[m], xgrid_->node(node), t, ch);
        eval(static_cast<int>(m), node, t, p.fast);
        probes.push_back(p);
        scale = std::max(scale, std::abs(p.direct.value));
      }
  for (const Probe &p : probes) {
    const double err = std::abs(p.direct.value - p.fast.value);
    if (err > 1e-6 * scale + 1e-15)
      throw GuardError("SlabTables: Taylor slab disagrees with direct spectral evaluation");
  }
}

}  // namespace nrlab
