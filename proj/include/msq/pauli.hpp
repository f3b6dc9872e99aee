#pragma once

// Symbolic algebra for signed Pauli strings. Phases live in {+1, +i, -1, -i},
// tracked exactly as a power of i; nothing here is floating point until a
// string is realized as a dense matrix.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "msq/dense.hpp"

namespace msq {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char letter_char(PauliLetter l) { return "IXYZ"[static_cast<int>(l)]; }

// Single-qubit product a*b = i^phase * letter.
struct LetterProduct {
    PauliLetter letter;
    std::uint8_t phase;  // exponent of i, mod 4
};

inline LetterProduct multiply(PauliLetter a, PauliLetter b) {
    if (a == PauliLetter::I) return {b, 0};
    if (b == PauliLetter::I) return {a, 0};
    if (a == b) return {PauliLetter::I, 0};
    // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    int ia = static_cast<int>(a), ib = static_cast<int>(b);
    int ic = 6 - ia - ib;  // the remaining letter index
    bool cyclic = (ib - ia + 3) % 3 == 1;  // X->Y->Z->X
    return {static_cast<PauliLetter>(ic), static_cast<std::uint8_t>(cyclic ? 1 : 3)};
}

inline bool anticommute(PauliLetter a, PauliLetter b) {
    return a != PauliLetter::I && b != PauliLetter::I && a != b;
}

class PauliString {
  public:
    PauliString(std::uint8_t phase_exponent, std::vector<PauliLetter> letters)
        : phase_(phase_exponent % 4), letters_(std::move(letters)) {}

    // Parse "+ZZX", "-XXX", "iY", "-iY" or bare "ZZX".
    static PauliString from_text(std::string_view text) {
        std::uint8_t phase = 0;
        std::size_t pos = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') phase = 2;
            ++pos;
        }
        if (pos < text.size() && text[pos] == 'i') {
            phase = (phase + 1) % 4;
            ++pos;
        }
        std::vector<PauliLetter> letters;
        for (; pos < text.size(); ++pos) {
            switch (text[pos]) {
                case 'I': letters.push_back(PauliLetter::I); break;
                case 'X': letters.push_back(PauliLetter::X); break;
                case 'Y': letters.push_back(PauliLetter::Y); break;
                case 'Z': letters.push_back(PauliLetter::Z); break;
                default: throw std::invalid_argument("PauliString: bad letter in text");
            }
        }
        if (letters.empty()) throw std::invalid_argument("PauliString: empty text");
        return PauliString(phase, std::move(letters));
    }

    std::size_t size() const { return letters_.size(); }
    PauliLetter letter(std::size_t k) const { return letters_.at(k); }
    const std::vector<PauliLetter>& letters() const { return letters_; }

    // Phase as exponent of i, in {0,1,2,3}.
    std::uint8_t phase_exponent() const { return phase_; }
    Complex phase() const {
        static constexpr Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[phase_];
    }

    bool is_hermitian() const { return phase_ % 2 == 0; }

    bool operator==(const PauliString& other) const {
        return phase_ == other.phase_ && letters_ == other.letters_;
    }

    std::string to_text() const {
        static constexpr const char* prefix[4] = {"+", "+i", "-", "-i"};
        std::string out = prefix[phase_];
        for (PauliLetter l : letters_) out.push_back(letter_char(l));
        return out;
    }

  private:
    std::uint8_t phase_;
    std::vector<PauliLetter> letters_;
};

inline PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multiply: length mismatch");
    std::uint8_t phase = (a.phase_exponent() + b.phase_exponent()) % 4;
    std::vector<PauliLetter> letters(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        LetterProduct p = multiply(a.letter(k), b.letter(k));
        letters[k] = p.letter;
        phase = static_cast<std::uint8_t>((phase + p.phase) % 4);
    }
    return PauliString(phase, std::move(letters));
}

// True iff the number of positions with anticommuting letters is even.
inline bool commutes(const PauliString& a, const PauliString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("commutes: length mismatch");
    int odd = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (anticommute(a.letter(k), b.letter(k))) odd ^= 1;
    return odd == 0;
}

// a (x) b: concatenated letters, multiplied phases.
inline PauliString tensor(const PauliString& a, const PauliString& b) {
    std::vector<PauliLetter> letters = a.letters();
    letters.insert(letters.end(), b.letters().begin(), b.letters().end());
    return PauliString(static_cast<std::uint8_t>((a.phase_exponent() + b.phase_exponent()) % 4),
                       std::move(letters));
}

// Dense 2^n x 2^n realization; qubit 0 is the most significant bit.
inline Matrix dense(const PauliString& p) {
    static const Matrix one = [] {
        Matrix m(1, 1);
        m(0, 0) = Complex(1, 0);
        return m;
    }();
    auto letter_matrix = [](PauliLetter l) {
        Matrix m(2, 2);
        switch (l) {
            case PauliLetter::I: m << 1, 0, 0, 1; break;
            case PauliLetter::X: m << 0, 1, 1, 0; break;
            case PauliLetter::Y: m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
            case PauliLetter::Z: m << 1, 0, 0, -1; break;
        }
        return m;
    };
    Matrix out = one;
    for (PauliLetter l : p.letters()) out = kron(out, letter_matrix(l));
    return p.phase() * out;
}

inline double commutator_norm(const PauliString& a, const PauliString& b) {
    return commutator_norm(dense(a), dense(b));
}

}  // namespace msq
