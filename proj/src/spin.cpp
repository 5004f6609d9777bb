#include "mpsham/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mpsham/linalg.hpp"

namespace mpsham {

namespace {

// ln(n!) from a cumulative table; exact integer arguments only appear once
// the triangle and parity checks have passed.
double ln_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(1024, 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size()))
    throw std::domain_error("ln_factorial: argument out of range");
  return table[static_cast<std::size_t>(n)];
}

void check_spin_pair(HalfInt s, HalfInt m, const char* what) {
  if (s.twice < 0)
    throw std::domain_error(std::string(what) + ": negative spin");
  if (!valid_magnetic(s, m))
    throw std::domain_error(std::string(what) + ": invalid (s=" + s.str() +
                            ", m=" + m.str() + ")");
}

}  // namespace

double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J,
          HalfInt M) {
  check_spin_pair(j1, m1, "cg");
  check_spin_pair(j2, m2, "cg");
  check_spin_pair(J, M, "cg");
  if (m1.twice + m2.twice != M.twice) return 0.0;
  if (!triangle(j1, j2, J)) return 0.0;

  // Racah's closed form; all factorial arguments below are integers.
  const int a1 = (j1.twice + j2.twice - J.twice) / 2;
  const int a2 = (j1.twice - j2.twice + J.twice) / 2;
  const int a3 = (-j1.twice + j2.twice + J.twice) / 2;
  const int a4 = (j1.twice + j2.twice + J.twice) / 2 + 1;
  const int jm1 = (j1.twice - m1.twice) / 2, jp1 = (j1.twice + m1.twice) / 2;
  const int jm2 = (j2.twice - m2.twice) / 2, jp2 = (j2.twice + m2.twice) / 2;
  const int JM = (J.twice + M.twice) / 2, Jm = (J.twice - M.twice) / 2;

  const double ln_pre =
      0.5 * (std::log(J.twice + 1.0) + ln_factorial(a1) + ln_factorial(a2) +
             ln_factorial(a3) - ln_factorial(a4) + ln_factorial(JM) +
             ln_factorial(Jm) + ln_factorial(jm1) + ln_factorial(jp1) +
             ln_factorial(jm2) + ln_factorial(jp2));

  const int t5 = (J.twice - j2.twice + m1.twice) / 2;  // + k
  const int t6 = (J.twice - j1.twice - m2.twice) / 2;  // + k
  int k_min = std::max(0, std::max(-t5, -t6));
  int k_max = std::min(a1, std::min(jm1, jp2));

  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    double ln_den = ln_factorial(k) + ln_factorial(a1 - k) +
                    ln_factorial(jm1 - k) + ln_factorial(jp2 - k) +
                    ln_factorial(t5 + k) + ln_factorial(t6 + k);
    double term = std::exp(ln_pre - ln_den);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

SpinOperators spin_operators(HalfInt s) {
  if (s.twice < 0) throw std::domain_error("spin_operators: negative spin");
  const Index dim = s.multiplicity();
  Matrix jz = Matrix::Zero(dim, dim);
  Matrix jp = Matrix::Zero(dim, dim);
  const double sv = s.value();
  for (Index a = 0; a < dim; ++a) {
    double m = sv - static_cast<double>(a);
    jz(a, a) = m;
    if (a > 0)  // <m+1| J+ |m>, the m+1 level sits one row up
      jp(a - 1, a) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
  }
  Matrix jm = jp.adjoint();
  SpinOperators ops;
  ops.jx = LocalOperator{1, dim, 0.5 * (jp + jm)};
  ops.jy = LocalOperator{1, dim, Complex(0, -0.5) * (jp - jm)};
  ops.jz = LocalOperator{1, dim, jz};
  return ops;
}

LocalOperator total_spin_projector(HalfInt s1, HalfInt s2, HalfInt S) {
  if (!triangle(s1, s2, S))
    throw std::domain_error("total_spin_projector: S=" + S.str() +
                            " outside " + s1.str() + " (x) " + s2.str());
  const Index d1 = s1.multiplicity(), d2 = s2.multiplicity();
  Matrix p = Matrix::Zero(d1 * d2, d1 * d2);
  for (int tM = S.twice; tM >= -S.twice; tM -= 2) {
    Vector v = Vector::Zero(d1 * d2);
    for (Index a = 0; a < d1; ++a) {
      HalfInt m1(s1.twice - 2 * static_cast<int>(a));
      HalfInt m2(tM - m1.twice);
      if (!valid_magnetic(s2, m2)) continue;
      Index b = (s2.twice - m2.twice) / 2;
      v(a * d2 + b) = cg(s1, m1, s2, m2, S, HalfInt(tM));
    }
    p += v * v.adjoint();
  }
  return LocalOperator{2, d1, p};
}

Vector bond_state(HalfInt j, HalfInt Q) {
  if (!triangle(j, j, Q))
    throw std::domain_error("bond_state: Q=" + Q.str() + " outside j (x) j");
  const Index dim = j.multiplicity();
  Vector v = Vector::Zero(dim * dim);
  for (Index a = 0; a < dim; ++a) {
    HalfInt m(j.twice - 2 * static_cast<int>(a));
    Index b = (j.twice + m.twice) / 2;  // level with magnetic number -m
    v(a * dim + b) = cg(j, m, j, -m, Q, HalfInt(0));
  }
  return v;
}

LocalOperator heisenberg_poly(HalfInt J, const std::vector<double>& coeffs,
                              double constant) {
  SpinOperators ops = spin_operators(J);
  const Index d = J.multiplicity();
  const Index dim = d * d;
  Matrix dot = kron(ops.jx.matrix, ops.jx.matrix) +
               kron(ops.jy.matrix, ops.jy.matrix) +
               kron(ops.jz.matrix, ops.jz.matrix);
  Matrix h = constant * Matrix::Identity(dim, dim);
  Matrix power = Matrix::Identity(dim, dim);
  for (double c : coeffs) {
    power = power * dot;
    if (c != 0.0) h += c * power;
  }
  return LocalOperator{2, d, h};
}

}  // namespace mpsham
