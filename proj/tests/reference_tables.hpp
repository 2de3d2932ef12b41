#pragma once

// Published D1 repricing tables, rounded to two decimals (prices) and three
// decimals (differences) as printed.

#include "hestoncal/charfn.hpp"

#include <array>

namespace reference {

struct Row {
    double model;
    double abs_diff;
    bool within;
};

// {v0, vbar, a, eta, rho}
inline const hestoncal::HestonParams kD1Local{0.0989, 0.3407, 0.7331, 0.7068, -0.2949};
inline const hestoncal::HestonParams kD1Global{0.0983, 0.2957, 0.9626, 0.7544, -0.2919};

inline constexpr std::array<Row, 15> kD1LocalTable{{
    {56.01, 0.886, true}, {35.57, 0.728, true}, {19.62, 0.018, true}, {9.26, 0.185, true},
    {3.84, 0.460, false}, {63.26, 0.059, true}, {45.52, 0.620, false}, {31.07, 0.519, false},
    {20.21, 0.157, true}, {12.69, 0.188, true}, {77.16, 0.389, true}, {61.87, 0.420, true},
    {48.85, 0.049, true}, {38.10, 0.349, true}, {29.47, 0.026, true},
}};

inline constexpr std::array<Row, 15> kD1GlobalTable{{
    {56.05, 0.853, true}, {35.58, 0.716, true}, {19.59, 0.008, true}, {9.23, 0.220, true},
    {3.83, 0.470, false}, {63.30, 0.103, true}, {45.55, 0.647, false}, {31.08, 0.531, false},
    {20.21, 0.165, true}, {12.70, 0.203, true}, {77.13, 0.416, true}, {61.85, 0.403, true},
    {48.85, 0.055, true}, {38.10, 0.346, true}, {29.48, 0.017, true},
}};

inline constexpr double kD1LocalAvg = 0.3369;
inline constexpr double kD1GlobalAvg = 0.3436;
inline constexpr double kD1MeanHalfSpread = 0.6933;
inline constexpr double kD3MeanHalfSpread = 0.0559;

} // namespace reference
