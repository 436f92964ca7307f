#include "radii/delta.hpp"

#include <cmath>
#include <sstream>

#include "radii/error.hpp"
#include "radii/linalg.hpp"

namespace radii {

namespace {

using Mat = Eigen::MatrixXcd;

std::string describe(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_square(const ComplexMatrix& x, const char* what) {
    if (!x.is_square()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " + std::to_string(x.rows()) +
                             "x" + std::to_string(x.cols()));
    }
}

Mat assemble(const Mat& s, const Mat& x, const Mat& y, const Mat& t) {
    Mat out(2 * s.rows(), 2 * s.rows());
    out << s, x, y, t;
    return out;
}

}  // namespace

RhoNuParams make_params(double rho, double nu) {
    if (!(rho > 0.0 && rho <= 2.0)) {
        throw DomainError("rho out of range (0,2]: got " + describe(rho));
    }
    if (!(nu >= 0.0 && nu <= 1.0)) {
        throw DomainError("nu out of range [0,1]: got " + describe(nu));
    }
    RhoNuParams p;
    p.rho = rho;
    p.nu = nu;
    // 8/rho - 4 can round to a tiny negative at rho = 2
    p.alpha = std::sqrt(std::max(0.0, 8.0 / rho - 4.0));
    p.beta = 2.0 / rho - 2.0;
    p.mu = 1.0 - 2.0 * nu;
    return p;
}

ComplexMatrix build_h(const ComplexMatrix& x, const RhoNuParams& p) {
    require_square(x, "build_h");
    const Mat& m = x.mat();
    const Mat zero = Mat::Zero(m.rows(), m.cols());
    const Mat adj = m.adjoint();
    return ComplexMatrix(assemble(zero, p.alpha * m, (p.alpha * p.mu) * adj, p.beta * (m + p.mu * adj)));
}

DeltaBlocks build_blocks(const ComplexMatrix& x, const RhoNuParams& p) {
    require_square(x, "build_blocks");
    const Mat& m = x.mat();
    const Mat zero = Mat::Zero(m.rows(), m.cols());
    return {build_h(x, p), ComplexMatrix(assemble(zero, p.alpha * m, zero, p.beta * m))};
}

double delta(const ComplexMatrix& x, const RhoNuParams& p, const AngleSolverConfig& cfg) {
    require_square(x, "delta");
    if (p.rho == 2.0) {
        return numerical_radius(ComplexMatrix(Mat(x.mat() + p.mu * x.mat().adjoint())), cfg);
    }
    return numerical_radius(build_h(x, p), cfg);
}

double delta(const ComplexMatrix& x, double rho, double nu, const AngleSolverConfig& cfg) {
    return delta(x, make_params(rho, nu), cfg);
}

TheoremBlockBundle build_theorem_blocks(const ComplexMatrix& x, const RhoNuParams& p) {
    require_square(x, "build_theorem_blocks");
    const Mat& m = x.mat();
    const Mat adj = m.adjoint();
    const Mat abs2 = adj * m;       // |X|^2
    const Mat abs2_adj = m * adj;   // |X*|^2
    const Mat sq = m * m;
    const Mat sq_adj = adj * adj;
    const Mat mixed = m + p.mu * adj;   // X + mu X*
    const Mat mixed_adj = mixed.adjoint();

    const double a = p.alpha, b = p.beta, mu = p.mu;
    const double a2 = a * a, b2 = b * b, ab = a * b;

    TheoremBlockBundle out;
    out.A = ComplexMatrix(Mat(a2 * abs2_adj));
    out.B = ComplexMatrix(Mat(ab * abs2_adj));
    out.C = ComplexMatrix(Mat((a2 + b2) * abs2 + b2 * abs2_adj));

    out.Q = ComplexMatrix(Mat(a2 * mu * abs2_adj));
    out.R = ComplexMatrix(Mat(ab * (sq + mu * abs2_adj)));
    out.T = ComplexMatrix(Mat(ab * mu * (abs2_adj + mu * sq_adj)));
    out.S = ComplexMatrix(Mat(a2 * mu * abs2 + b2 * (mixed * mixed)));

    out.M = ComplexMatrix(Mat(a2 * (1.0 + mu * mu) * abs2_adj));
    out.N = ComplexMatrix(Mat(2.0 * ab * mu * sq + ab * (1.0 + mu * mu) * abs2_adj));
    // |X + mu X*|^2 + |X* + mu X|^2
    out.P = ComplexMatrix(Mat(a2 * (1.0 + mu * mu) * abs2 + b2 * (mixed_adj * mixed + mixed * mixed_adj)));
    return out;
}

double block_identity_threshold(double norm_x, const RhoNuParams& p) {
    const double coeff = 1.0 + p.alpha + std::abs(p.beta);
    return 1e-10 * (1.0 + norm_x * norm_x) * coeff * coeff;
}

std::vector<CheckResult> verify_block_identities(const ComplexMatrix& x, const RhoNuParams& p,
                                                 const Witness& witness) {
    require_square(x, "verify_block_identities");
    const auto blocks = build_blocks(x, p);
    const auto tb = build_theorem_blocks(x, p);
    const Mat& m = x.mat();
    const Mat& g = blocks.G.mat();
    const Mat& h = blocks.H.mat();
    const Mat zero = Mat::Zero(m.rows(), m.cols());
    const Mat sq = m * m;

    const Mat g2_expected = p.beta * assemble(zero, p.alpha * sq, zero, p.beta * sq);
    const Mat gsum_expected = assemble(tb.A.mat(), tb.B.mat(), tb.B.mat(), tb.C.mat());
    const Mat h2_expected = assemble(tb.Q.mat(), tb.R.mat(), tb.T.mat(), tb.S.mat());
    const Mat hsum_expected = assemble(tb.M.mat(), tb.N.mat(), tb.N.mat().adjoint(), tb.P.mat());

    const double residuals[4] = {
        (g * g - g2_expected).norm(),
        (g.adjoint() * g + g * g.adjoint() - gsum_expected).norm(),
        (h * h - h2_expected).norm(),
        (h.adjoint() * h + h * h.adjoint() - hsum_expected).norm(),
    };
    const double threshold = block_identity_threshold(spectral_norm(x), p);

    std::vector<CheckResult> out;
    out.reserve(4);
    for (double r : residuals) {
        out.push_back(make_equality(CheckId::O_block_identities, r, 0.0, threshold, witness));
    }
    return out;
}

}  // namespace radii
