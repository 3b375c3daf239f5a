#include "covals/builtins.hpp"

#include <cmath>

namespace covals {

namespace {

Complex q(double re_num, double re_den, double im_num, double im_den) {
  return {re_num / re_den, im_num / im_den};
}

CMatrix make_a0() {
  return {{{1, 1}, {2, 1}, 1}, {0, {5, -1}, {3, 1}}, {0, 0, {-1, 2}}};
}

CMatrix make_a4() {
  return {{{1, -1}, 0, {-2, -1}, {2, 1}},
          {0, {-1, -1}, 1, {0, -1}},
          {0, 0, 1, {2, -2}},
          {0, 0, 0, -1}};
}

CMatrix make_a3() {
  return {{q(-33, 10, -21, 10), q(79, 30, -14, 5), q(9, 5, 77, 30), q(-11, 6, 19, 6)},
          {0, q(17, 15, -89, 30), q(11, 6, 23, 10), q(7, 5, 19, 30)},
          {0, 0, q(12, 5, -1, 10), q(23, 10, -5, 2)},
          {0, 0, 0, q(16, 5, 13, 5)}};
}

CMatrix make_seven() {
  return {{q(-27, 10, 46, 15), q(14, 15, 89, 30), q(-67, 30, 27, 10), q(23, 30, 17, 30), q(13, 5, 5, 6),
           q(-5, 6, 19, 30), q(-17, 30, -17, 6)},
          {0, q(-9, 5, -17, 6), q(7, 6, -43, 30), q(-23, 15, 29, 15), q(2, 3, 34, 15), q(17, 10, -3, 2),
           q(-2, 1, 83, 30)},
          {0, 0, q(8, 5, 19, 10), q(16, 15, -19, 30), q(13, 30, -17, 6), q(-37, 15, 5, 2), q(13, 15, -79, 30)},
          {0, 0, 0, q(-7, 6, -12, 5), q(13, 10, -9, 5), q(2, 3, 47, 30), q(8, 3, -1, 6)},
          {0, 0, 0, 0, q(7, 6, -1, 3), q(27, 10, 3, 2), q(3, 10, 3, 10)},
          {0, 0, 0, 0, 0, q(-29, 30, -79, 30), q(-23, 15, -41, 30)},
          {0, 0, 0, 0, 0, 0, q(-1, 15, 3, 1)}};
}

}  // namespace

CMatrix cardioid_matrix(double a) {
  return Complex{a} * CMatrix{{1, 3, 3}, {0, 1, 3}, {0, 0, 1}};
}

CMatrix family_ab(Complex b) {
  return {{0, 1, b, 1}, {0, 0, 1, b}, {0, 0, 0, 1}, {0, 0, 0, 0}};
}

const std::vector<NamedMatrix>& builtin_matrices() {
  static const std::vector<NamedMatrix> matrices = {
      {"A0", "3x3 upper triangular, one secondary value", make_a0()},
      {"A4", "4x4 with eigenvalues +-1 and +-1-i", make_a4()},
      {"A3", "4x4 with an inner conic", make_a3()},
      {"cardioid", "a [[1,3,3],[0,1,3],[0,0,1]] with a = 1", cardioid_matrix(1.0)},
      {"Ab1", "4x4 nilpotent family at b = 1", family_ab(1.0)},
      {"Ab_sqrt2", "4x4 nilpotent family at b = sqrt 2", family_ab(std::sqrt(2.0))},
      {"seven", "7x7 with a non-real-rooted remainder", make_seven()},
  };
  return matrices;
}

const NamedMatrix* find_builtin(std::string_view name) {
  for (const auto& m : builtin_matrices())
    if (m.name == name) return &m;
  return nullptr;
}

}  // namespace covals
