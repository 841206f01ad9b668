// Spacetime lattice [-L,L) x [-Tw,Tw) and the three field representations.
#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "dlab/common.hpp"

namespace dlab {

struct GridSpec {
  double L = 0;   // spatial half-width
  int Nx = 0;     // spatial points, power of two, >= 4
  double Tw = 0;  // temporal half-width
  int Nt = 0;     // temporal points, power of two, >= 4
};

inline bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

struct DyadicCache;  // built lazily per grid (see dyadic.hpp)

class Grid {
 public:
  explicit Grid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  double dx() const { return dx_; }
  double dt() const { return dt_; }
  double dxi() const { return dxi_; }
  double dtau() const { return dtau_; }
  int nx() const { return spec_.Nx; }
  int nt() const { return spec_.Nt; }

  // lattice index ranges: k in [-Nx/2, Nx/2), m/n in [-Nt/2, Nt/2)
  double x(int p) const { return p * dx_; }
  double t(int n) const { return n * dt_; }
  double xi(int k) const { return k * dxi_; }
  double tau(int m) const { return m * dtau_; }

  double xi_max() const { return (spec_.Nx / 2) * dxi_; }
  double tau_max() const { return (spec_.Nt / 2) * dtau_; }

  const DyadicCache& dyadic() const;

  bool same_lattice(const Grid& o) const {
    return spec_.L == o.spec_.L && spec_.Nx == o.spec_.Nx && spec_.Tw == o.spec_.Tw &&
           spec_.Nt == o.spec_.Nt;
  }

 private:
  GridSpec spec_;
  double dx_, dt_, dxi_, dtau_;
  mutable std::shared_ptr<DyadicCache> dyadic_;
  mutable std::once_flag dyadic_once_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const GridSpec& spec);  // validates spec

enum class Rep : int { Physical = 0, Mode = 1, Spectral = 2 };

// One complex value per lattice point, row-major with rows = time (or tau)
// ascending from -Nt/2 and columns = x (or xi) ascending from -Nx/2.
class Field {
 public:
  Field() = default;
  Field(GridPtr g, Rep rep) : grid_(std::move(g)), rep_(rep), v_(size_t(grid_->nx()) * grid_->nt()) {}

  const GridPtr& grid() const { return grid_; }
  Rep rep() const { return rep_; }
  std::vector<cplx>& values() { return v_; }
  const std::vector<cplx>& values() const { return v_; }

  int rows() const { return grid_->nt(); }
  int cols() const { return grid_->nx(); }

  // signed lattice indices: m in [-Nt/2, Nt/2), k in [-Nx/2, Nx/2)
  cplx& at(int m, int k) { return v_[idx(m, k)]; }
  const cplx& at(int m, int k) const { return v_[idx(m, k)]; }
  std::size_t idx(int m, int k) const {
    return std::size_t(m + grid_->nt() / 2) * grid_->nx() + (k + grid_->nx() / 2);
  }

  cplx* row(int r) { return v_.data() + std::size_t(r) * grid_->nx(); }  // r = m + Nt/2
  const cplx* row(int r) const { return v_.data() + std::size_t(r) * grid_->nx(); }

  bool finite() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx c);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, cplx c) { return a *= c; }

 private:
  GridPtr grid_;
  Rep rep_ = Rep::Physical;
  std::vector<cplx> v_;
};

// A spatial profile: one complex value per xi (or x) lattice point.
struct Profile {
  GridPtr grid;
  std::vector<cplx> v;  // index c = k + Nx/2

  Profile() = default;
  Profile(GridPtr g) : grid(std::move(g)), v(grid->nx()) {}
  cplx& at(int k) { return v[k + grid->nx() / 2]; }
  const cplx& at(int k) const { return v[k + grid->nx() / 2]; }
};

// physical <-> mode transforms act in x; mode <-> spectral act in t.
enum class Dir { Forward, Inverse };

Field transform(const Field& f, Dir dir);
Field to_rep(const Field& f, Rep target);  // composes transforms as needed

double parseval_defect(const Field& f);

// f^(lambda)(x) = lambda^-2 f(x/lambda) realized spectrally:
// f^(lambda)-hat(xi) = lambda^-1 f-hat(lambda xi), cubic interpolation on the
// xi lattice; support overflow (mass beyond xi_max*lambda) -> ResolutionError.
Profile rescale(const Profile& fhat, double lambda);

double l2_norm(const Field& f);  // sqrt(sum |f|^2 * cell measure) for its rep

}  // namespace dlab
