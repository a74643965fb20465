#pragma once

// Internal quadrature helpers shared by the noise constants and the
// characteristic-function benchmark.  Not installed.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace stablesde::detail {

struct NodeWeight {
    double x;
    double w;
};

inline constexpr std::array<NodeWeight, 15> kGL15 = {{
    {-0.9879925180204854, 0.030753241996118647},
    {-0.937273392400706, 0.07036604748810807},
    {-0.8482065834104272, 0.10715922046717177},
    {-0.7244177313601701, 0.1395706779261539},
    {-0.5709721726085388, 0.16626920581699378},
    {-0.3941513470775634, 0.18616100001556188},
    {-0.20119409399743451, 0.19843148532711125},
    {0.0, 0.2025782419255609},
    {0.20119409399743451, 0.19843148532711125},
    {0.3941513470775634, 0.18616100001556188},
    {0.5709721726085388, 0.16626920581699378},
    {0.7244177313601701, 0.1395706779261539},
    {0.8482065834104272, 0.10715922046717177},
    {0.937273392400706, 0.07036604748810807},
    {0.9879925180204854, 0.030753241996118647},
}};

inline constexpr std::array<NodeWeight, 21> kGL21 = {{
    {-0.9937521706203895, 0.016017228257774137},
    {-0.9672268385663063, 0.03695378977085292},
    {-0.9200993341504008, 0.057134425426857156},
    {-0.8533633645833173, 0.07610011362837935},
    {-0.7684399634756779, 0.09344442345603382},
    {-0.6671388041974123, 0.10879729916714831},
    {-0.5516188358872198, 0.12183141605372842},
    {-0.4243421202074388, 0.13226893863333739},
    {-0.2880213168024011, 0.13988739479107312},
    {-0.1455618541608951, 0.14452440398997007},
    {0.0, 0.14608113364969047},
    {0.1455618541608951, 0.14452440398997007},
    {0.2880213168024011, 0.13988739479107312},
    {0.4243421202074388, 0.13226893863333739},
    {0.5516188358872198, 0.12183141605372842},
    {0.6671388041974123, 0.10879729916714831},
    {0.7684399634756779, 0.09344442345603382},
    {0.8533633645833173, 0.07610011362837935},
    {0.9200993341504008, 0.057134425426857156},
    {0.9672268385663063, 0.03695378977085292},
    {0.9937521706203895, 0.016017228257774137},
}};

template <std::size_t N, class F>
double gauss(const std::array<NodeWeight, N>& rule, F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0;
    for (const auto& nw : rule) acc += nw.w * f(mid + half * nw.x);
    return half * acc;
}

template <class F>
double panels(F&& f, std::span<const double> breaks) {
    double acc = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        acc += gauss(kGL21, f, breaks[i], breaks[i + 1]);
    return acc;
}

// int_0^s (1 - cos u) u^{-1-alpha} du by the alternating series
// sum_k (-1)^{k+1} s^{2k-alpha} / ((2k)! (2k-alpha)); rapid for s <= 4.
inline double cos_defect_head(double s, double alpha) {
    const double s2 = s * s;
    double fact = 2.0;                      // (2k)!
    double spow = std::pow(s, 2.0 - alpha); // s^{2k-alpha}
    double sum = 0;
    double sign = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double term = sign * spow / (fact * (2.0 * k - alpha));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
        sign = -sign;
        spow *= s2;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

// int_T^inf u^{-s} cos u du by repeated integration by parts; remainder after
// `depth` levels is below s^(2 depth) T^{-s-2 depth+1}.
inline double osc_cos_tail(double T, double s, int depth = 6) {
    if (depth == 0) return 0.0;
    return -std::pow(T, -s) * std::sin(T) + s * std::pow(T, -s - 1.0) * std::cos(T) -
           s * (s + 1.0) * osc_cos_tail(T, s + 2.0, depth - 1);
}

// int_0^s (1 - cos u) u^{-1-alpha} du for arbitrary s >= 0.  `width` sets the
// panel length past the series region; halving it gives an independent
// refinement for error control.
inline double cos_defect_integral(double s, double alpha, double width = 3.0) {
    if (s <= 4.0) return cos_defect_head(s, alpha);
    double acc = cos_defect_head(4.0, alpha);
    double a = 4.0;
    const auto f = [alpha](double u) { return (1.0 - std::cos(u)) * std::pow(u, -1.0 - alpha); };
    while (a < s) {
        const double b = std::min(s, a + width);
        acc += gauss(kGL21, f, a, b);
        a = b;
    }
    return acc;
}

// K_alpha = int_0^inf (1 - cos u) u^{-1-alpha} du, full oscillatory integral.
inline double cos_defect_full(double alpha) {
    const double T = 100.0;
    double acc = cos_defect_head(0.5, alpha);
    const auto f = [alpha](double u) { return (1.0 - std::cos(u)) * std::pow(u, -1.0 - alpha); };
    double a = 0.5;
    while (a < T) {
        const double b = std::min(T, a + 2.0);
        acc += gauss(kGL21, f, a, b);
        a = b;
    }
    acc += std::pow(T, -alpha) / alpha - osc_cos_tail(T, 1.0 + alpha);
    return acc;
}

} // namespace stablesde::detail
