// qops.hpp — dense complex operators and qubit states
//
// Units: Hamiltonians carry angular frequency in rad/ms, time in ms, so that
// exp(-i H t) takes dimensionless arguments.
#pragma once

#include <complex>
#include <Eigen/Dense>

#include "stalz/errors.hpp"

namespace stalz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class DensityMatrix;

// Dense square operator. Values are immutable after construction.
class Operator {
public:
    explicit Operator(Matrix entries);

    static Operator zero(Eigen::Index dim);
    static Operator identity(Eigen::Index dim);
    static Operator sigma_x();
    static Operator sigma_y();
    static Operator sigma_z();

    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    // Max-entry deviation from the adjoint, relative to max(1, max |entry|).
    bool is_hermitian(double tol = 1e-12) const;
    Operator dagger() const { return Operator(entries_.adjoint()); }
    double max_abs() const { return entries_.size() ? entries_.cwiseAbs().maxCoeff() : 0.0; }

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(Complex c, const Operator& a);
    friend Operator operator*(double c, const Operator& a);

private:
    Matrix entries_;
};

// Normalized state vector.
class PureState {
public:
    explicit PureState(Vector amplitudes, double norm_tol = 1e-10);

    static PureState basis(Eigen::Index dim, Eigen::Index index);
    static PureState normalized(Vector amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

    Complex overlap(const PureState& other) const; // <this|other>
    DensityMatrix projector() const;

private:
    Vector amplitudes_;
};

// Unit-trace positive Hermitian matrix.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries, double tol = 1e-10, double psd_tol = 1e-8);

    static DensityMatrix pure(const PureState& psi);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

    double purity() const { return (entries_ * entries_).trace().real(); }
    double population(Eigen::Index i) const { return entries_(i, i).real(); }
    Complex coherence(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
    Matrix entries_;
};

struct EigDecomposition {
    Eigen::VectorXd values; // ascending
    Matrix vectors;         // orthonormal columns, largest component real positive
};

Operator commutator(const Operator& a, const Operator& b);

// U = exp(-i h t). Closed Pauli form for dim 2, scaling-and-squaring otherwise.
Operator expm_herm(const Operator& h, double t);

EigDecomposition eig_herm(const Operator& h);

// Tr{h^2} for Hermitian h.
double hs_norm_sq(const Operator& h);

// Bures-style root fidelity sqrt(<psi|rho|psi>).
double fidelity(const DensityMatrix& rho, const PureState& psi);

// |<a|b>| between pure states.
double fidelity(const PureState& a, const PureState& b);

} // namespace stalz
