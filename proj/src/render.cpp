#include "sofree/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sofree {

namespace {

constexpr double kSize = 400, kCenter = 200, kOuter = 150, kInner = 75, kLabelGap = 16;
constexpr double kPi = 3.14159265358979323846;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::abs(x) < 0.005 ? 0.0 : x);
    return buf;
}

struct Pt {
    double x, y;
};

// Angle in screen coordinates (y grows downward), so increasing angle runs clockwise.
double angle_of(int point, Shape s) {
    if (point < s.m) return -kPi / 2 + 2 * kPi * point / s.m;
    return -kPi / 2 - 2 * kPi * (point - s.m) / s.n;
}

Pt at_radius(double a, double r) { return {kCenter + r * std::cos(a), kCenter + r * std::sin(a)}; }

Pt position(int point, Shape s, double offset = 0) {
    double r = point < s.m ? kOuter + offset : kInner - offset;
    return at_radius(angle_of(point, s), r);
}

}  // namespace

std::string render_svg(const Permutation& p, Shape s) {
    if (s.m < 1 || s.n < 1) throw Error("render: shape must have m, n >= 1");
    if (p.size() != s.total()) throw Error("render: permutation size does not match the shape");
    if (!is_annular_nc(p, s)) throw Error("render: " + p.to_string() + " is not a non-crossing annular permutation");

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kSize) << "\" height=\"" << num(kSize)
       << "\" viewBox=\"0 0 " << num(kSize) << " " << num(kSize) << "\">\n";
    os << "<circle class=\"outer\" cx=\"" << num(kCenter) << "\" cy=\"" << num(kCenter) << "\" r=\"" << num(kOuter)
       << "\" fill=\"none\" stroke=\"#999\"/>\n";
    os << "<circle class=\"inner\" cx=\"" << num(kCenter) << "\" cy=\"" << num(kCenter) << "\" r=\"" << num(kInner)
       << "\" fill=\"none\" stroke=\"#999\"/>\n";

    for (const Cycle& c : p.cycles()) {
        if (c.size() < 2) continue;
        os << "<path class=\"cycle\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" d=\"";
        Pt start = position(c[0], s);
        os << "M " << num(start.x) << " " << num(start.y);
        for (std::size_t k = 0; k < c.size(); ++k) {
            int a = c[k], b = c[(k + 1) % c.size()];
            Pt q = position(b, s);
            bool cross = (a < s.m) != (b < s.m);
            if (cross) {
                // Bend through the middle of the annulus.
                double ma = (angle_of(a, s) + angle_of(b, s)) / 2;
                Pt ctrl = at_radius(ma, (kOuter + kInner) / 2);
                os << " Q " << num(ctrl.x) << " " << num(ctrl.y) << " " << num(q.x) << " " << num(q.y);
            } else if (k + 1 < c.size()) {
                os << " L " << num(q.x) << " " << num(q.y);
            }
        }
        os << " Z\"/>\n";
    }

    for (int i = 0; i < s.total(); ++i) {
        Pt d = position(i, s);
        Pt l = position(i, s, kLabelGap);
        os << "<circle class=\"point\" cx=\"" << num(d.x) << "\" cy=\"" << num(d.y) << "\" r=\"3\"/>\n";
        os << "<text x=\"" << num(l.x) << "\" y=\"" << num(l.y)
           << "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << i + 1 << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace sofree
