// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace disksplit {

inline constexpr double pi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;

    double radius() const { return std::hypot(x, y); }
    double angle() const { return std::atan2(y, x); }
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace disksplit
