#include "radii/numerical_range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "radii/error.hpp"

namespace radii {

namespace {

using Mat = Eigen::MatrixXcd;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// A support line {q : Re(e^{i theta} q) = h} of the numerical range W(X),
// touching W at `point`.
struct SupportLine {
    double theta;
    double h;
    Complex point;
    double c = std::cos(theta);
    double s = std::sin(theta);
};

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Evaluates lambda_max / lambda_min of Re(e^{i theta} X) = cos(theta) A - sin(theta) B.
// One Hermitian eigensolve yields the support lines at theta and theta + pi.
class SupportSampler {
public:
    SupportSampler(const Mat& x, bool with_points)
        : x_(x),
          a_(0.5 * (x + x.adjoint())),
          b_(Complex(0.0, -0.5) * (x - x.adjoint())),
          k_(x.rows(), x.cols()),
          solver_(x.rows()),
          with_points_(with_points) {}

    void sample(double theta, std::vector<SupportLine>& out) {
        k_.noalias() = std::cos(theta) * a_ - std::sin(theta) * b_;
        solver_.compute(k_, with_points_ ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        if (solver_.info() != Eigen::Success) {
            throw Error("numerical range: eigensolver did not converge");
        }
        const auto& ev = solver_.eigenvalues();
        const Index last = ev.size() - 1;
        Complex top{ev(last), 0.0};
        Complex bottom{ev(0), 0.0};
        if (with_points_) {
            const auto& vecs = solver_.eigenvectors();
            top = vecs.col(last).dot(x_ * vecs.col(last));
            bottom = vecs.col(0).dot(x_ * vecs.col(0));
        }
        out.push_back({wrap_angle(theta), ev(last), top});
        out.push_back({wrap_angle(theta + std::numbers::pi), -ev(0), bottom});
        ++solves_;
    }

    // A point of W(X) on the support line at theta, given the top eigenvalue
    // there. Inverse iteration is much cheaper than a full eigenvector solve,
    // and any unit z gives <Xz, z> in W(X), so the result is a valid point even
    // if the iteration is imperfect.
    Complex boundary_point(const SupportLine& line) {
        const Index n = x_.rows();
        k_.noalias() = line.c * a_ - line.s * b_;
        const double scale = std::max(k_.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
        k_.diagonal().array() -= Complex(line.h + 1e-10 * scale, 0.0);
        Eigen::PartialPivLU<Mat> lu(k_);
        Eigen::VectorXcd z(n);
        for (Index i = 0; i < n; ++i) {
            z(i) = Complex(1.0 + 0.1 * i, 0.3 - 0.05 * i);
        }
        for (int it = 0; it < 2; ++it) {
            z = lu.solve(z);
            const double nz = z.norm();
            if (!std::isfinite(nz) || nz == 0.0) {
                return Complex(line.h, 0.0) * std::polar(1.0, -line.theta);
            }
            z /= nz;
        }
        return z.dot(x_ * z);
    }

    int solves() const { return solves_; }

private:
    const Mat& x_;
    Mat a_;
    Mat b_;
    Mat k_;
    Eigen::SelfAdjointEigenSolver<Mat> solver_;
    bool with_points_;
    int solves_ = 0;
};

// Lines sorted by angle, with the circumscribed polygon's vertices
// vertex[j] = line[j] ∩ line[j+1] (cyclically).
class SupportPolygon {
public:
    void insert(std::vector<SupportLine>& fresh) {
        for (const auto& l : fresh) {
            auto it = std::lower_bound(lines_.begin(), lines_.end(), l.theta,
                                       [](const SupportLine& a, double t) { return a.theta < t; });
            if (it != lines_.end() && it->theta == l.theta) {
                continue;
            }
            lines_.insert(it, l);
        }
        fresh.clear();
        rebuild();
    }

    std::size_t size() const { return lines_.size(); }
    const SupportLine& line(std::size_t j) const { return lines_[j]; }
    const SupportLine& next(std::size_t j) const { return lines_[(j + 1) % lines_.size()]; }
    Complex vertex(std::size_t j) const { return vertices_[j]; }
    bool bounded(std::size_t j) const { return std::isfinite(vertices_[j].real()); }

    // Angular width of the cell between line j and line j+1.
    double gap(std::size_t j) const {
        const double g = next(j).theta - lines_[j].theta;
        return g <= 0.0 ? g + kTwoPi : g;
    }

    // Picks a new angle inside cell j, aimed at the direction whose outward
    // normal is parallel to `target`. Falls back to bisection when that
    // direction lies outside the cell.
    double aim(std::size_t j, Complex target) const {
        const double width = gap(j);
        const double start = lines_[j].theta;
        if (std::abs(target) == 0.0 || !std::isfinite(target.real())) {
            return wrap_angle(start + 0.5 * width);
        }
        const double offset = wrap_angle(-std::arg(target) - start);
        if (offset >= width) {
            return wrap_angle(start + 0.5 * width);
        }
        return wrap_angle(start + std::clamp(offset, 0.02 * width, 0.98 * width));
    }

private:
    void rebuild() {
        const std::size_t m = lines_.size();
        vertices_.assign(m, Complex(kInf, kInf));
        for (std::size_t j = 0; j < m; ++j) {
            const auto& l1 = lines_[j];
            const auto& l2 = lines_[(j + 1) % m];
            const double delta = gap(j);
            if (m < 3 || delta >= std::numbers::pi * (1.0 - 1e-12)) {
                continue;
            }
            const double det = l1.s * l2.c - l1.c * l2.s;
            const double x = (l1.s * l2.h - l2.s * l1.h) / det;
            const double y = (l1.c * l2.h - l2.c * l1.h) / det;
            vertices_[j] = Complex(x, y);
        }
    }

    std::vector<SupportLine> lines_;
    std::vector<Complex> vertices_;
};

void seed_grid(SupportSampler& sampler, SupportPolygon& poly, int coarse_points) {
    const int solves = (coarse_points + 1) / 2;
    std::vector<SupportLine> fresh;
    fresh.reserve(2 * static_cast<std::size_t>(solves));
    for (int k = 0; k < solves; ++k) {
        sampler.sample(std::numbers::pi * k / solves, fresh);
    }
    poly.insert(fresh);
}

// Runs of consecutive cells whose vertex still lies beyond `level`; each run
// is one local maximizer of f still being refined. A run covering every cell
// (a disk-like range) counts once.
int open_peaks(const SupportPolygon& poly, double level) {
    const std::size_t m = poly.size();
    auto open = [&](std::size_t j) { return !poly.bounded(j) || std::abs(poly.vertex(j)) > level; };
    int runs = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (open(j) && !open((j + m - 1) % m)) {
            ++runs;
        }
    }
    return std::max(runs, 1);
}

void require_square(const ComplexMatrix& x, const char* what) {
    if (!x.is_square()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " + std::to_string(x.rows()) +
                             "x" + std::to_string(x.cols()));
    }
}

double radius_impl(const Mat& x, const AngleSolverConfig& cfg) {
    if (x.size() == 0) {
        return 0.0;
    }
    SupportSampler sampler(x, false);
    SupportPolygon poly;
    seed_grid(sampler, poly, cfg.coarse_points);

    std::vector<SupportLine> fresh;
    double attained = 0.0;
    // |point| on the best line. At a corner of W (normal X) the support values
    // only approach w as the angle hits the corner exactly, the point does not.
    double point_bound = 0.0;
    std::vector<double> probed;
    int peaks = 1;
    auto probe = [&](const SupportLine& line) {
        if (std::find(probed.begin(), probed.end(), line.theta) != probed.end()) {
            return;
        }
        probed.push_back(line.theta);
        point_bound = std::max(point_bound, std::abs(sampler.boundary_point(line)));
    };
    for (int iter = 0;; ++iter) {
        double bound = 0.0;
        std::size_t worst = 0;
        std::size_t best = 0;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            if (poly.line(j).h > poly.line(best).h) {
                best = j;
            }
            const double r = poly.bounded(j) ? std::abs(poly.vertex(j)) : kInf;
            if (r > bound) {
                bound = r;
                worst = j;
            }
        }
        attained = std::max(poly.line(best).h, point_bound);
        if (bound - attained <= cfg.target_rel_err * attained) {
            break;
        }
        if (std::isfinite(bound)) {
            // The worst vertex may itself be a corner of W; refining toward it
            // never raises h, but the lines through it touch the corner.
            probe(poly.line(best));
            probe(poly.line(worst));
            probe(poly.next(worst));
            attained = std::max(attained, point_bound);
            if (bound - attained <= cfg.target_rel_err * attained) {
                break;
            }
        }
        peaks = std::max(peaks, open_peaks(poly, attained * (1.0 + cfg.target_rel_err)));
        if (iter >= static_cast<long long>(cfg.refine_iters) * peaks) {
            break;
        }
        sampler.sample(poly.aim(worst, poly.vertex(worst)), fresh);
        poly.insert(fresh);
    }
    return attained;
}

// Distance from the origin to the segment [a, b], together with the nearest point.
Complex nearest_on_segment(Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) {
        return a;
    }
    const double t = std::clamp(-(a.real() * d.real() + a.imag() * d.imag()) / len2, 0.0, 1.0);
    return a + t * d;
}

double crawford_impl(const Mat& x, const AngleSolverConfig& cfg) {
    if (x.size() == 0) {
        return 0.0;
    }
    SupportSampler sampler(x, true);
    SupportPolygon poly;
    seed_grid(sampler, poly, cfg.coarse_points);

    std::vector<SupportLine> fresh;
    double separation = 0.0;
    for (int iter = 0;; ++iter) {
        // Lower bound: the best separating support line, max(0, sup -h).
        // Upper bound: distance to the convex hull of attained boundary points,
        // which are already ordered along the boundary.
        separation = 0.0;
        double scale = 0.0;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            separation = std::max(separation, -poly.line(j).h);
            scale = std::max(scale, std::abs(poly.line(j).h));
        }
        const double degenerate = 1e-13 * std::max(scale, std::numeric_limits<double>::min());

        bool encloses = false;
        bool any_edge = false;
        double hull_dist = kInf;
        Complex nearest{};
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const Complex a = poly.line(j).point;
            const Complex b = poly.next(j).point;
            const Complex q = nearest_on_segment(a, b);
            if (std::abs(q) < hull_dist) {
                hull_dist = std::abs(q);
                nearest = q;
            }
            if (std::abs(b - a) > degenerate) {
                if (!any_edge) {
                    encloses = true;
                    any_edge = true;
                }
                // Boundary points run clockwise; the origin is enclosed when it
                // lies to the right of every edge.
                if (cross(a, b) >= 0.0) {
                    encloses = false;
                }
            }
        }
        if (encloses) {
            hull_dist = 0.0;
        }
        if (hull_dist - separation <= cfg.target_rel_err * scale || iter >= cfg.refine_iters) {
            break;
        }

        // Gilbert step: the support point in direction -nearest.
        const Complex dir = -nearest;
        const double theta = wrap_angle(-std::arg(dir));
        std::size_t cell = 0;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const double off = wrap_angle(theta - poly.line(j).theta);
            if (off < poly.gap(j)) {
                cell = j;
                break;
            }
        }
        const double off = wrap_angle(theta - poly.line(cell).theta);
        if (off == 0.0) {
            // Direction already sampled: split the widest neighbouring cell instead.
            const std::size_t prev = (cell + poly.size() - 1) % poly.size();
            const std::size_t pick = poly.gap(cell) >= poly.gap(prev) ? cell : prev;
            sampler.sample(poly.line(pick).theta + 0.5 * poly.gap(pick), fresh);
        } else {
            sampler.sample(theta, fresh);
        }
        poly.insert(fresh);
    }
    return separation;
}

}  // namespace

void AngleSolverConfig::validate() const {
    if (coarse_points < 8) throw DomainError("coarse_points must be >= 8");
    if (refine_iters < 1) throw DomainError("refine_iters must be >= 1");
    if (!(std::isfinite(target_rel_err) && target_rel_err > 0.0)) throw DomainError("target_rel_err must be > 0");
}

double numerical_radius(const ComplexMatrix& x, const AngleSolverConfig& cfg) {
    require_square(x, "numerical_radius");
    cfg.validate();
    return radius_impl(x.mat(), cfg);
}

double crawford_number(const ComplexMatrix& x, const AngleSolverConfig& cfg) {
    require_square(x, "crawford_number");
    cfg.validate();
    return crawford_impl(x.mat(), cfg);
}

double operator_radius_rho(const ComplexMatrix& x, double rho, const AngleSolverConfig& cfg) {
    if (!(rho > 0.0 && rho <= 2.0)) {
        throw DomainError("rho out of range (0,2]");
    }
    require_square(x, "operator_radius_rho");
    cfg.validate();
    const Index n = x.rows();
    Mat block = Mat::Zero(2 * n, 2 * n);
    block.topRightCorner(n, n) = std::sqrt(rho * (2.0 - rho)) * x.mat();
    block.bottomRightCorner(n, n) = (1.0 - rho) * x.mat();
    return (2.0 / rho) * radius_impl(block, cfg);
}

ComplexMatrix aluthge(const ComplexMatrix& x, const ToleranceConfig& tol) {
    require_square(x, "aluthge");
    const auto pd = polar(x, tol);
    const auto root = psd_power(pd.modulus, 0.5, tol);
    return root * pd.isometry * root;
}

}  // namespace radii
