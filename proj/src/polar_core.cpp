#include "polar/polar_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace polar {

CodeConfig config_from_mask(std::size_t n, BitVector frozen) {
    if (!is_power_of_two(n) || n < 2)
        throw std::invalid_argument("config_from_mask: n must be a power of two >= 2");
    if (frozen.size() != n)
        throw std::invalid_argument("config_from_mask: frozen mask length != n");
    std::size_t ones = 0;
    for (Bit b : frozen) {
        if (b > 1) throw std::invalid_argument("config_from_mask: mask entries must be 0/1");
        ones += b;
    }
    CodeConfig cfg;
    cfg.n = n;
    cfg.k = n - ones;
    cfg.m = log2_exact(n);
    cfg.frozen = std::move(frozen);
    return cfg;
}

std::vector<double> bhattacharyya_parameters(std::size_t n, double design_param) {
    if (!is_power_of_two(n) || n < 2)
        throw std::invalid_argument("bhattacharyya_parameters: n must be a power of two >= 2");
    if (!std::isfinite(design_param) || design_param < 0.0 || design_param > 1.0)
        throw std::invalid_argument("bhattacharyya_parameters: design parameter must be in [0,1]");
    std::vector<double> z{design_param};
    const unsigned m = log2_exact(n);
    for (unsigned stage = 0; stage < m; ++stage) {
        std::vector<double> next(2 * z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = 2.0 * z[i] - z[i] * z[i];
            next[2 * i + 1] = z[i] * z[i];
        }
        z = std::move(next);
    }
    return z;
}

CodeConfig construct_frozen(std::size_t n, std::size_t k, double design_param) {
    if (k > n) throw std::invalid_argument("construct_frozen: k > n");
    const std::vector<double> z = bhattacharyya_parameters(n, design_param);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (z[a] != z[b]) return z[a] > z[b];
        return a < b;  // ties: freeze the lower index
    });
    BitVector frozen(n, 0);
    for (std::size_t i = 0; i < n - k; ++i) frozen[order[i]] = 1;
    return config_from_mask(n, std::move(frozen));
}

BitVector generator_row(std::size_t n, std::size_t i) {
    if (!is_power_of_two(n) || n < 2)
        throw std::invalid_argument("generator_row: n must be a power of two >= 2");
    if (i >= n) throw std::out_of_range("generator_row: row index out of range");
    BitVector row(n, 0);
    for (std::size_t col = 0; col <= i; ++col)
        row[col] = static_cast<Bit>((col & ~i) == 0);
    return row;
}

BitVector polar_transform(BitVector bits) {
    const std::size_t n = bits.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("polar_transform: length must be a power of two");
    for (std::size_t h = 1; h < n; h *= 2)
        for (std::size_t i = 0; i < n; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j)
                bits[j] = static_cast<Bit>(bits[j] ^ bits[j + h]);
    return bits;
}

BitVector encode(const CodeConfig& cfg, const BitVector& u) {
    if (u.size() != cfg.n)
        throw std::invalid_argument("encode: message length != n");
    for (std::size_t i = 0; i < cfg.n; ++i)
        if (cfg.frozen[i] && u[i])
            throw std::invalid_argument("encode: nonzero bit at frozen position " +
                                        std::to_string(i));
    return polar_transform(u);
}

CodeConfig load_frozen_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open frozen-set file: " + path);
    std::size_t n = 0, k = 0;
    if (!(in >> n >> k)) throw IoError("frozen-set file: missing 'n k' header: " + path);
    if (!is_power_of_two(n) || n < 2 || k > n)
        throw IoError("frozen-set file: invalid n/k header: " + path);
    BitVector frozen(n, 0);
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t c = 0; c < n - k; ++c) {
        std::size_t idx = 0;
        if (!(in >> idx)) throw IoError("frozen-set file: expected " + std::to_string(n - k) +
                                        " indices: " + path);
        if (idx >= n) throw IoError("frozen-set file: index out of range: " + path);
        if (!first && idx <= prev) throw IoError("frozen-set file: indices not ascending: " + path);
        frozen[idx] = 1;
        prev = idx;
        first = false;
    }
    std::size_t extra;
    if (in >> extra) throw IoError("frozen-set file: trailing data: " + path);
    return config_from_mask(n, std::move(frozen));
}

void save_frozen_file(const CodeConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write frozen-set file: " + path);
    out << cfg.n << ' ' << cfg.k << '\n';
    bool first = true;
    for (std::size_t i = 0; i < cfg.n; ++i) {
        if (!cfg.frozen[i]) continue;
        if (!first) out << ' ';
        out << i;
        first = false;
    }
    out << '\n';
    if (!out) throw IoError("error writing frozen-set file: " + path);
}

}  // namespace polar
