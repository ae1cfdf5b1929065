#include "stalz/qops.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace stalz {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_dim(const Operator& a, const Operator& b, const char* who) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

void require_hermitian(const Operator& h, const char* who) {
    if (!h.is_hermitian())
        throw std::invalid_argument(std::string(who) + ": operator is not Hermitian");
}

} // namespace

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
        throw std::invalid_argument("Operator: entries must be a nonempty square matrix");
}

Operator Operator::zero(Eigen::Index dim) { return Operator(Matrix::Zero(dim, dim)); }

Operator Operator::identity(Eigen::Index dim) { return Operator(Matrix::Identity(dim, dim)); }

Operator Operator::sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return Operator(m);
}

Operator Operator::sigma_y() {
    Matrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return Operator(m);
}

Operator Operator::sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return Operator(m);
}

bool Operator::is_hermitian(double tol) const {
    const double scale = std::max(1.0, max_abs());
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Operator operator+(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator+");
    return Operator(a.entries_ + b.entries_);
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator-");
    return Operator(a.entries_ - b.entries_);
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator*");
    return Operator(a.entries_ * b.entries_);
}

Operator operator*(Complex c, const Operator& a) { return Operator(c * a.entries_); }

Operator operator*(double c, const Operator& a) { return Operator(c * a.entries_); }

PureState::PureState(Vector amplitudes, double norm_tol) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1)
        throw std::invalid_argument("PureState: empty amplitude vector");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > norm_tol)
        throw std::invalid_argument("PureState: amplitudes are not normalized");
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim)
        throw std::invalid_argument("PureState::basis: index out of range");
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::normalized(Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm <= 0.0)
        throw std::invalid_argument("PureState::normalized: zero vector");
    return PureState(amplitudes / norm);
}

Complex PureState::overlap(const PureState& other) const {
    if (dim() != other.dim())
        throw std::invalid_argument("PureState::overlap: dimension mismatch");
    return amplitudes_.dot(other.amplitudes_); // Eigen dot conjugates the left factor
}

DensityMatrix PureState::projector() const {
    return DensityMatrix(amplitudes_ * amplitudes_.adjoint());
}

DensityMatrix::DensityMatrix(Matrix entries, double tol, double psd_tol)
    : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
        throw std::invalid_argument("DensityMatrix: entries must be a nonempty square matrix");
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(entries_.trace().real() - 1.0) > tol || std::abs(entries_.trace().imag()) > tol)
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -psd_tol)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::pure(const PureState& psi) { return psi.projector(); }

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Operator commutator(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "commutator");
    return Operator(a.entries() * b.entries() - b.entries() * a.entries());
}

Operator expm_herm(const Operator& h, double t) {
    require_hermitian(h, "expm_herm");
    if (h.dim() == 2) {
        // h = c*I + a.sigma with real coefficients; exp(-i h t) in closed form.
        const Matrix& m = h.entries();
        const double c = 0.5 * (m(0, 0).real() + m(1, 1).real());
        const double az = 0.5 * (m(0, 0).real() - m(1, 1).real());
        const double ax = m(1, 0).real();
        const double ay = m(1, 0).imag();
        const double a = std::sqrt(ax * ax + ay * ay + az * az);
        const Complex phase = std::exp(Complex(0.0, -c * t));
        Matrix u(2, 2);
        if (a * std::abs(t) < 1e-300) {
            u = Matrix::Identity(2, 2);
        } else {
            const double cs = std::cos(a * t);
            const double sn = std::sin(a * t) / a;
            u(0, 0) = Complex(cs, -sn * az);
            u(0, 1) = Complex(-sn * ay, -sn * ax);
            u(1, 0) = Complex(sn * ay, -sn * ax);
            u(1, 1) = Complex(cs, sn * az);
        }
        return Operator(phase * u);
    }
    const Matrix arg = Complex(0.0, -t) * h.entries();
    return Operator(arg.exp());
}

EigDecomposition eig_herm(const Operator& h) {
    require_hermitian(h, "eig_herm");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries());
    if (solver.info() != Eigen::Success)
        throw numeric_error("eig_herm: eigensolver failed");
    EigDecomposition out;
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    // Gauge fix: make the largest-magnitude component of each column real positive.
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
        Eigen::Index imax = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < out.vectors.rows(); ++i) {
            const double mag = std::abs(out.vectors(i, k));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        const Complex pivot = out.vectors(imax, k);
        if (best > 0.0) out.vectors.col(k) *= std::conj(pivot) / best;
    }
    return out;
}

double hs_norm_sq(const Operator& h) {
    require_hermitian(h, "hs_norm_sq");
    return h.entries().squaredNorm(); // Tr{h^2} = ||h||_F^2 for Hermitian h
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
    if (rho.dim() != psi.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const Complex q = psi.amplitudes().dot(rho.entries() * psi.amplitudes());
    if (q.real() < -1e-8)
        throw numeric_error("fidelity: <psi|rho|psi> is negative beyond tolerance");
    const double clipped = std::min(1.0, std::max(0.0, q.real()));
    return std::sqrt(clipped);
}

double fidelity(const PureState& a, const PureState& b) { return std::abs(a.overlap(b)); }

} // namespace stalz
