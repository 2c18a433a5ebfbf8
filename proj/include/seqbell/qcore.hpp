#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <utility>

#include "seqbell/common.hpp"

// Small dense complex linear algebra for few-qubit systems: states,
// observables, tensor embedding, unitary evolution and exact expectation
// values. Everything here is immutable after construction and all matrices
// are dense (dimension <= 16).
namespace seqbell::qcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 4;
inline constexpr double kHermitianTol = 1e-12;

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline int qubits_for_dim(Eigen::Index dim) {
    int k = 0;
    Eigen::Index d = 1;
    while (d < dim) {
        d <<= 1;
        ++k;
    }
    require(d == dim && dim >= 2, "dimension must be a power of two >= 2");
    require(k <= kMaxQubits, "systems above " + std::to_string(kMaxQubits) + " qubits are out of scope");
    return k;
}

// Normalized pure state of k qubits. Qubit 0 is the most significant bit of
// the amplitude index, so for a two-party system party A is qubit 0 and the
// basis order is |00>,|01>,|10>,|11>.
class StateVector {
  public:
    explicit StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
        num_qubits_ = qubits_for_dim(amps_.size());
        const double n = amps_.norm();
        require(n > 1e-14, "state vector has (near) zero norm");
        amps_ /= n;
    }

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] Eigen::Index dim() const { return amps_.size(); }
    [[nodiscard]] const Vector& amplitudes() const { return amps_; }
    [[nodiscard]] double norm() const { return amps_.norm(); }

    [[nodiscard]] double expectation(const Matrix& op) const {
        require(op.rows() == dim() && op.cols() == dim(), "operator dimension does not match state");
        return std::real(amps_.dot(op * amps_));
    }

  private:
    Vector amps_;
    int num_qubits_;
};

// Hermitian operator embedded on the full system, tagged with the subsystem
// it acts on (by qubit index; -1 for operators built directly on the whole
// system) and a human-readable label.
class Observable {
  public:
    Observable(Matrix matrix, std::string label, int qubit = -1)
        : matrix_(std::move(matrix)), label_(std::move(label)), qubit_(qubit) {
        require(is_hermitian(matrix_, kHermitianTol), "observable must be Hermitian: " + label_);
        qubits_for_dim(matrix_.rows());
    }

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] int qubit() const { return qubit_; }
    [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
    std::string label_;
    int qubit_;
};

class Hamiltonian {
  public:
    explicit Hamiltonian(Matrix matrix) : matrix_(std::move(matrix)) {
        require(is_hermitian(matrix_, kHermitianTol), "Hamiltonian must be Hermitian");
    }

    static Hamiltonian zero(int num_qubits) { return Hamiltonian(Matrix::Zero(1 << num_qubits, 1 << num_qubits)); }

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] bool is_zero() const { return matrix_.cwiseAbs().maxCoeff() == 0.0; }

  private:
    Matrix matrix_;
};

// Two-party labels for the standard Bell setup (party A = qubit 0).
enum class Party { A, B };

inline int qubit_of(Party p) { return p == Party::A ? 0 : 1; }
inline const char* name_of(Party p) { return p == Party::A ? "A" : "B"; }

inline Matrix embed(const Matrix& local, int qubit, int num_qubits) {
    require(local.rows() == 2 && local.cols() == 2, "embed expects a single-qubit operator");
    require(qubit >= 0 && qubit < num_qubits, "invalid subsystem index");
    Matrix out = qubit == 0 ? local : identity(1 << qubit);
    if (qubit > 0) out = kron(out, local);
    if (qubit < num_qubits - 1) out = kron(out, identity(1 << (num_qubits - 1 - qubit)));
    return out;
}

// Spin along angle theta in the x-z plane: sin(theta) sx + cos(theta) sz.
// theta = 0 is sz, pi/2 is sx; pi/4 and 3pi/4 give (sx +- sz)/sqrt(2).
inline Matrix spin_matrix(double theta) {
    require(std::isfinite(theta), "spin angle must be finite");
    return std::sin(theta) * pauli_x() + std::cos(theta) * pauli_z();
}

inline Observable spin_observable(double theta, int qubit, int num_qubits, std::string label = {}) {
    if (label.empty()) label = "spin(" + std::to_string(theta) + ")@q" + std::to_string(qubit);
    return Observable(embed(spin_matrix(theta), qubit, num_qubits), std::move(label), qubit);
}

inline Observable spin_observable(double theta, Party party, std::string label = {}) {
    if (label.empty()) label = "spin(" + std::to_string(theta) + ")@" + name_of(party);
    return Observable(embed(spin_matrix(theta), qubit_of(party), 2), std::move(label), qubit_of(party));
}

// The maximally entangled two-qubit state (|00> + |11>)/sqrt(2).
inline StateVector epr_state() {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return StateVector(std::move(v));
}

// exp(-i H t) through the Hermitian eigendecomposition; exact at this scale.
inline Matrix evolution_unitary(const Hamiltonian& h, double t) {
    const Matrix& m = h.matrix();
    if (h.is_zero() || t == 0.0) return identity(static_cast<int>(m.rows()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint().eval()));
    check(es.info() == Eigen::Success, "eigendecomposition failed");
    Vector phases(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) phases(i) = std::exp(Complex(0, -es.eigenvalues()(i) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Heisenberg-picture operator U+(t) O U(t) with U(t) = exp(-i H0 t).
inline Observable heisenberg(const Observable& o, const Hamiltonian& h0, double t) {
    require(o.dim() == h0.matrix().rows(), "observable/Hamiltonian dimension mismatch");
    const Matrix u = evolution_unitary(h0, t);
    Matrix evolved = u.adjoint() * o.matrix() * u;
    evolved = 0.5 * (evolved + evolved.adjoint().eval());  // strip eigensolver noise
    check(is_hermitian(evolved, 1e-10), "evolved observable lost hermiticity");
    return Observable(std::move(evolved), o.label(), o.qubit());
}

// Re <psi| Oi Oj |psi>. Callers pass Heisenberg-evolved operators when the
// free Hamiltonian matters.
inline double two_time_corr(const StateVector& psi, const Observable& oi, const Observable& oj) {
    require(oi.dim() == psi.dim() && oj.dim() == psi.dim(), "operator/state dimension mismatch");
    const Vector right = oj.matrix() * psi.amplitudes();
    const Vector left = oi.matrix().adjoint() * psi.amplitudes();
    return std::real(left.dot(right));
}

// Haar-ish random pure state (complex normal amplitudes, normalized).
template <class URBG>
StateVector random_state(int num_qubits, URBG& rng) {
    require(num_qubits >= 1 && num_qubits <= kMaxQubits, "unsupported qubit count");
    Vector v(1 << num_qubits);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return StateVector(std::move(v));
}

}  // namespace seqbell::qcore
