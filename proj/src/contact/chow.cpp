#include "hypercontact/contact/chow.hpp"

#include <cmath>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

const Complex kZero(0.0, 0.0);

// Segment that moves coordinate `block` of x (or y) linearly by delta,
// everything else held at `from`. z is recovered by integration.
HolomorphicCurve move_segment(const ContactPoint& from, int block, bool move_y, Complex delta) {
  std::vector<CPolynomial> x, y;
  for (int j = 0; j < from.n(); ++j) {
    const bool moves_x = !move_y && j == block;
    const bool moves_y = move_y && j == block;
    x.push_back(CPolynomial::from_taylor({from.x[j], moves_x ? delta : kZero}));
    y.push_back(CPolynomial::from_taylor({from.y[j], moves_y ? delta : kZero}));
  }
  return legendrian_from_xy(std::move(x), std::move(y), from.z);
}

}  // namespace

ContactPoint PathPlan::end() const {
  if (segments.empty()) return start;
  return segments.back()(Complex(1.0, 0.0));
}

PathPlan chow_path(const ContactPoint& p, const ContactPoint& q, LoopShape loop) {
  if (!p.consistent() || !q.consistent() || p.n() != q.n()) {
    throw DimensionMismatch("chow_path: endpoint dimensions differ");
  }
  if (p.n() < 1) throw PreconditionError("chow_path needs n >= 1");
  PathPlan plan;
  plan.start = p;
  ContactPoint cur = p;

  auto push = [&](int block, bool move_y, Complex delta) {
    if (delta == kZero) return;
    plan.segments.push_back(move_segment(cur, block, move_y, delta));
    cur = plan.segments.back()(Complex(1.0, 0.0));
  };

  for (int j = 0; j < p.n(); ++j) {
    push(j, false, q.x[j] - cur.x[j]);
    push(j, true, q.y[j] - cur.y[j]);
  }

  const Complex w = q.z - cur.z;
  if (w != kZero) {
    // Loop x: +A, y: +B, x: -A, y: -B changes z by -A*B.
    Complex side_x, side_y;
    if (loop == LoopShape::UnitHeight) {
      side_x = -w;
      side_y = Complex(1.0, 0.0);
    } else {
      const Complex s = std::sqrt(w);
      side_x = -s;
      side_y = s;
    }
    push(0, false, side_x);
    push(0, true, side_y);
    push(0, false, -side_x);
    push(0, true, -side_y);
  }
  return plan;
}

}  // namespace hypercontact
