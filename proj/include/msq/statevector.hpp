#pragma once

// Dense statevector engine. States are small (at most 6 qubits here), qubit 0
// is the most significant bit of the amplitude index, and every operation is
// a pure function unless the name says in_place.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "msq/dense.hpp"
#include "msq/pauli.hpp"
#include "msq/rng.hpp"

namespace msq {

struct StateVector {
    int qubits = 0;
    Vector amplitudes;

    static StateVector zero_state(int qubits) {
        StateVector s;
        s.qubits = qubits;
        s.amplitudes = Vector::Zero(std::int64_t(1) << qubits);
        s.amplitudes(0) = Complex(1, 0);
        return s;
    }

    std::int64_t dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

// Three Bell pairs on qubit pairs (0,3), (1,4), (2,5): Alice holds 0-2,
// Bob holds 3-5. Eight nonzero amplitudes, each 2^{-3/2}.
inline StateVector prepare_bell_stack() {
    StateVector s;
    s.qubits = 6;
    s.amplitudes = Vector::Zero(64);
    const double amp = 1.0 / std::sqrt(8.0);
    for (int b = 0; b < 8; ++b) s.amplitudes(b * 8 + b) = Complex(amp, 0);
    return s;
}

struct Gate {
    enum class Kind : std::uint8_t { RX, RY, RZ, CNOT };
    Kind kind;
    int target;
    int control;   // CNOT only, -1 otherwise
    double angle;  // rotations only

    static Gate rx(int target, double angle) { return {Kind::RX, target, -1, angle}; }
    static Gate ry(int target, double angle) { return {Kind::RY, target, -1, angle}; }
    static Gate rz(int target, double angle) { return {Kind::RZ, target, -1, angle}; }
    static Gate cnot(int control, int target) { return {Kind::CNOT, target, control, 0.0}; }

    // The same gate acting `offset` qubits further down the register.
    Gate shifted(int offset) const {
        Gate g = *this;
        g.target += offset;
        if (g.control >= 0) g.control += offset;
        return g;
    }
};

inline void apply_gate_in_place(StateVector& s, const Gate& g) {
    const int n = s.qubits;
    if (g.target < 0 || g.target >= n) throw std::out_of_range("apply_gate: target out of range");
    const std::int64_t tbit = std::int64_t(1) << (n - 1 - g.target);
    if (g.kind == Gate::Kind::CNOT) {
        if (g.control < 0 || g.control >= n)
            throw std::out_of_range("apply_gate: control out of range");
        if (g.control == g.target) throw std::invalid_argument("apply_gate: control equals target");
        const std::int64_t cbit = std::int64_t(1) << (n - 1 - g.control);
        for (std::int64_t i = 0; i < s.dim(); ++i)
            if ((i & cbit) && !(i & tbit)) std::swap(s.amplitudes(i), s.amplitudes(i | tbit));
        return;
    }
    // Rotation exp(-i * angle * G / 2) for G in {X, Y, Z}.
    const double c = std::cos(g.angle / 2), sn = std::sin(g.angle / 2);
    for (std::int64_t i = 0; i < s.dim(); ++i) {
        if (i & tbit) continue;
        Complex a0 = s.amplitudes(i), a1 = s.amplitudes(i | tbit);
        switch (g.kind) {
            case Gate::Kind::RX:
                s.amplitudes(i) = c * a0 + Complex(0, -sn) * a1;
                s.amplitudes(i | tbit) = Complex(0, -sn) * a0 + c * a1;
                break;
            case Gate::Kind::RY:
                s.amplitudes(i) = c * a0 - sn * a1;
                s.amplitudes(i | tbit) = sn * a0 + c * a1;
                break;
            case Gate::Kind::RZ:
                s.amplitudes(i) = Complex(c, -sn) * a0;
                s.amplitudes(i | tbit) = Complex(c, sn) * a1;
                break;
            default: break;
        }
    }
}

inline StateVector apply_gate(const StateVector& s, const Gate& g) {
    StateVector out = s;
    apply_gate_in_place(out, g);
    return out;
}

inline void apply_circuit_in_place(StateVector& s, std::span<const Gate> gates,
                                   int qubit_offset = 0) {
    for (const Gate& g : gates) {
        Gate shifted = qubit_offset ? g.shifted(qubit_offset) : g;
        apply_gate_in_place(s, shifted);
    }
}

// The 2^n x 2^n unitary induced by a gate sequence, column by column.
inline Matrix dense_unitary(std::span<const Gate> gates, int qubits) {
    const std::int64_t dim = std::int64_t(1) << qubits;
    Matrix u(dim, dim);
    for (std::int64_t col = 0; col < dim; ++col) {
        StateVector s;
        s.qubits = qubits;
        s.amplitudes = Vector::Zero(dim);
        s.amplitudes(col) = Complex(1, 0);
        apply_circuit_in_place(s, gates);
        u.col(col) = s.amplitudes;
    }
    return u;
}

namespace detail {

// p|s> without building the dense matrix: each basis state maps to exactly
// one other under a Pauli string.
inline Vector apply_pauli(const PauliString& p, const StateVector& s) {
    const int n = s.qubits;
    if (static_cast<int>(p.size()) != n)
        throw std::invalid_argument("apply_pauli: length does not match qubit count");
    std::int64_t xmask = 0;
    for (int q = 0; q < n; ++q) {
        PauliLetter l = p.letter(q);
        if (l == PauliLetter::X || l == PauliLetter::Y) xmask |= std::int64_t(1) << (n - 1 - q);
    }
    Vector out = Vector::Zero(s.dim());
    for (std::int64_t i = 0; i < s.dim(); ++i) {
        Complex coeff = p.phase();
        for (int q = 0; q < n; ++q) {
            const std::int64_t bit = (i >> (n - 1 - q)) & 1;
            switch (p.letter(q)) {
                case PauliLetter::Z:
                    if (bit) coeff = -coeff;
                    break;
                case PauliLetter::Y: coeff *= bit ? Complex(0, -1) : Complex(0, 1); break;
                default: break;
            }
        }
        out(i ^ xmask) += coeff * s.amplitudes(i);
    }
    return out;
}

}  // namespace detail

// <s| obs |s> for a Hermitian Pauli string; the imaginary residue is checked
// and discarded.
inline double expectation(const StateVector& s, const PauliString& obs) {
    if (!obs.is_hermitian()) throw std::invalid_argument("expectation: non-Hermitian observable");
    Vector applied = detail::apply_pauli(obs, s);
    Complex value = s.amplitudes.dot(applied);  // Eigen dot conjugates the left side
    if (std::abs(value.imag()) > 1e-12)
        throw std::runtime_error("expectation: imaginary residue above tolerance");
    return value.real();
}

// One single-site measured observable.
struct SiteObservable {
    int qubit;
    PauliLetter letter;  // X, Y or Z
};

// One shot of six jointly measured single-site observables: +-1 eigenvalues
// in call order (Alice's three sites, then Bob's three).
struct Outcome {
    std::array<int, 6> values;

    int alice_product() const { return values[0] * values[1] * values[2]; }
    int bob_product() const { return values[3] * values[4] * values[5]; }
};

// Jointly sample six commuting single-site observables. Each site's basis is
// rotated so its observable becomes Z, then the 64-dim probability vector is
// sampled shot by shot with the given seed.
inline std::vector<Outcome> sample_joint(const StateVector& s,
                                         const std::array<SiteObservable, 3>& alice_sites,
                                         const std::array<SiteObservable, 3>& bob_sites,
                                         std::int64_t shots, std::uint64_t seed) {
    std::array<SiteObservable, 6> sites;
    for (int k = 0; k < 3; ++k) sites[k] = alice_sites[k];
    for (int k = 0; k < 3; ++k) sites[3 + k] = bob_sites[k];

    std::uint64_t qubit_mask = 0;
    for (const SiteObservable& site : sites) {
        if (site.qubit < 0 || site.qubit >= s.qubits)
            throw std::out_of_range("sample_joint: qubit out of range");
        if (qubit_mask & (std::uint64_t(1) << site.qubit))
            throw std::invalid_argument("sample_joint: observables on overlapping qubits");
        qubit_mask |= std::uint64_t(1) << site.qubit;
        if (site.letter == PauliLetter::I)
            throw std::invalid_argument("sample_joint: identity is not a measurable site");
    }

    StateVector rotated = s;
    for (const SiteObservable& site : sites) {
        // Map the site's observable onto Z: V X V† = Z for V = RY(-pi/2),
        // V Y V† = Z for V = RX(pi/2).
        if (site.letter == PauliLetter::X)
            apply_gate_in_place(rotated, Gate::ry(site.qubit, -M_PI / 2));
        else if (site.letter == PauliLetter::Y)
            apply_gate_in_place(rotated, Gate::rx(site.qubit, M_PI / 2));
    }

    std::vector<double> cumulative(rotated.dim());
    double total = 0.0;
    for (std::int64_t i = 0; i < rotated.dim(); ++i) {
        total += std::norm(rotated.amplitudes(i));
        cumulative[i] = total;
    }

    std::vector<Outcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(shots));
    Rng rng(seed);
    const int n = s.qubits;
    for (std::int64_t shot = 0; shot < shots; ++shot) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::int64_t idx =
            std::min<std::int64_t>(it - cumulative.begin(), rotated.dim() - 1);
        Outcome o{};
        for (int k = 0; k < 6; ++k) {
            const std::int64_t bit = (idx >> (n - 1 - sites[k].qubit)) & 1;
            o.values[k] = bit ? -1 : 1;
        }
        outcomes.push_back(o);
    }
    return outcomes;
}

}  // namespace msq
