#include "uqres/wigner.hpp"

#include <cmath>
#include <numbers>

namespace uqres {

namespace {

int mod(long long a, int d) {
    const long long r = a % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

int half(int d) { return (d + 1) / 2; }

cplx omega_pow(int d, long long k) { return std::polar(1.0, 2.0 * std::numbers::pi * mod(k, d) / d); }

void require_odd_prime(int d) {
    if (!is_odd_prime(d)) throw InvariantError("Wigner functions need an odd prime dimension, got " + std::to_string(d));
}

} // namespace

bool is_odd_prime(int d) {
    if (d < 3 || d % 2 == 0) return false;
    for (int k = 3; k * k <= d; k += 2)
        if (d % k == 0) return false;
    return true;
}

double WignerTable::sum() const {
    double s = 0.0;
    for (const auto& row : values)
        for (double v : row) s += v;
    return s;
}

double WignerTable::sum_squares() const {
    double s = 0.0;
    for (const auto& row : values)
        for (double v : row) s += v * v;
    return s;
}

Mat weyl(int d, int q, int p) {
    require_odd_prime(d);
    Mat m = Mat::Zero(d, d);
    const cplx ph = omega_pow(d, static_cast<long long>(half(d)) * q * p);
    // X^q Z^p |j> = omega^{p j} |j + q>
    for (int j = 0; j < d; ++j) m(mod(j + q, d), j) = ph * omega_pow(d, static_cast<long long>(p) * j);
    return m;
}

Mat phase_point(int d, int q, int p) {
    require_odd_prime(d);
    Mat a0 = Mat::Zero(d, d);
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) a0 += weyl(d, u, v);
    a0 /= static_cast<double>(d);
    const Mat t = weyl(d, q, p);
    return t * a0 * t.adjoint();
}

WignerTable wigner_function(const DensityOperator& rho, int d) {
    require_odd_prime(d);
    if (rho.spec().size() != 1 || rho.spec().dim(0) != d)
        throw InvariantError("wigner_function expects a single qudit of dimension " + std::to_string(d));
    WignerTable w;
    w.d = d;
    w.values.assign(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p)
            w.values[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] =
                (phase_point(d, q, p) * rho.matrix()).trace().real() / d;
    return w;
}

double sum_negativity(const WignerTable& w) {
    double n = 0.0;
    for (const auto& row : w.values)
        for (double v : row)
            if (v < 0.0) n -= v;
    return n;
}

double mana(const DensityOperator& rho, int d) {
    return std::log2(2.0 * sum_negativity(wigner_function(rho, d)) + 1.0);
}

StabilizerStateSet stabilizer_states(int d) {
    require_odd_prime(d);
    StabilizerStateSet set;
    set.d = d;
    const HilbertSpec spec({d});
    for (int j = 0; j < d; ++j) set.states.push_back(StateVector::basis(spec, static_cast<std::size_t>(j)));
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
        for (int m = 0; m < d; ++m) {
            Vec v(d);
            for (int j = 0; j < d; ++j)
                v(j) = amp * omega_pow(d, static_cast<long long>(k) * half(d) * j * j + static_cast<long long>(m) * j);
            set.states.push_back(StateVector::normalized(spec, std::move(v)));
        }
    }
    return set;
}

Mat clifford_phase(int d) {
    require_odd_prime(d);
    Mat m = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) m(j, j) = omega_pow(d, static_cast<long long>(half(d)) * j * j);
    return m;
}

} // namespace uqres
