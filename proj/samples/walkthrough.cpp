// Computes gin(I^(m)) of three general points in the plane for m = 1..4 and
// prints the scaled Newton polytope data next to the predicted triangle.

#include "starshape/starshape.hpp"

#include <iostream>

int main() {
  using namespace starshape;
  const auto star = build_star(2, 3);
  const auto w = w_simplex(2, 3);
  std::cout << "W: a1 = " << to_string(w.a[0]) << ", a2 = " << to_string(w.a[1]) << ", area " << to_string(w.volume)
            << "\n";
  for (unsigned m = 1; m <= 4; ++m) {
    const auto res = compute_gin(star.scheme(m));
    const auto sh = scaled(shape_of(res), m);
    std::cout << "m=" << m << " gin:";
    for (const auto& g : ordered_generators(res.artinian)) std::cout << " " << g.to_string();
    const auto t = all_intercepts(sh);
    std::cout << "\n    intercepts " << to_string(t[0]) << ", " << to_string(t[1]) << "; area of Q "
              << to_string(q_area_2d(sh)) << "; avoids int W: " << (outside_interior_W(sh, w) ? "yes" : "no") << "\n";
  }
}
