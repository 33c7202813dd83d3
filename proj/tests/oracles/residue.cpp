#include <stdexcept>

#include "oracles.hpp"

namespace oracle {

std::string OracleReport::line() const {
    return "ORACLE " + oracle + " | " + instance + " | oracle=" + oracle_value +
           " main=" + main_value + (agree() ? " | agree" : " | DISAGREE");
}

namespace {

long pmod(long a, long q) {
    long r = a % q;
    return r < 0 ? r + q : r;
}

long mulmod(long a, long b, long q) {
    return static_cast<long>(static_cast<__int128>(a) * b % q);
}

long powm(long b, long e, long q) {
    long r = 1;
    b = pmod(b, q);
    while (e) {
        if (e & 1) r = mulmod(r, b, q);
        b = mulmod(b, b, q);
        e >>= 1;
    }
    return r;
}

// F_{q^2} = F_q[w]/(w^2 - n) for a non-residue n.
struct Fq2 {
    long a, b;
};

Fq2 mul2(Fq2 x, Fq2 y, long n, long q) {
    return {pmod(mulmod(x.a, y.a, q) + mulmod(mulmod(x.b, y.b, q), n, q), q),
            pmod(mulmod(x.a, y.b, q) + mulmod(x.b, y.a, q), q)};
}

}  // namespace

bool euler_square(long a, long q) {
    if (pmod(a, q) == 0) throw std::invalid_argument("oracle: a divisible by q");
    return powm(a, (q - 1) / 2, q) == 1;
}

bool splits_in_residue_field(long m, long d, long q, bool degree_two) {
    (void)d;
    if (q == 2) {
        // x^2 + x + c over F_2 or F_4 (elements 0, 1, w, w+1 with w^2 = w + 1).
        long c = pmod((m - 1) / 4, 2);
        if (!degree_two) return c == 0;
        return true;  // x^2 + x + 1 has the roots w, w + 1 in F_4
    }
    if (!degree_two) return euler_square(m, q);
    long n = 2;
    while (euler_square(n, q)) ++n;
    // x^((q^2 - 1)/2) for x = m embedded in F_{q^2}
    Fq2 r{1, 0}, x{pmod(m, q), 0};
    long e = (q * q - 1) / 2;
    while (e) {
        if (e & 1) r = mul2(r, x, n, q);
        x = mul2(x, x, n, q);
        e >>= 1;
    }
    return r.a == 1 && r.b == 0;
}

}  // namespace oracle
