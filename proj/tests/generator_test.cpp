#include <gtest/gtest.h>

#include <cmath>

#include "spinmat/generator.hpp"
#include "spinmat/oracle.hpp"
#include "spinmat/sampling.hpp"

using namespace spinmat;

namespace {

const Spectrum kSpin(Vector5{2.0, 1.0, 0.0, -1.0, -2.0});

}  // namespace

TEST(Spectrum, RejectsNonFiniteValues) {
  EXPECT_THROW(Spectrum(Vector5{1.0, std::nan(""), 0.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Spectrum(Vector5{1.0, Complex(0.0, INFINITY), 0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(Generate, AllAnglesZeroGivesDiagonal) {
  const Spectrum s(Vector5{Complex(1, 2), -3.0, Complex(0, 0.5), 7.0, Complex(-1, -1)});
  const GeneratedMatrix g = generate(ParameterPoint{}, s);
  EXPECT_LT(max_abs_diff(g.entries, Matrix5::diagonal(s.values())), 1e-15);
  ASSERT_TRUE(g.provenance);
  EXPECT_EQ(g.provenance->spectrum, s);
}

TEST(Generate, NorthPoleBAxisReproducesSpinOperator) {
  Sampler sample(31);
  for (int k = 0; k < 100; ++k) {
    const Direction c = sample.direction();
    const Matrix5 m = generate({c, Direction(0.0, 0.0)}, kSpin).entries;
    EXPECT_LT(max_abs_diff(m, spin_operator(c)), 1e-12);
  }
}

TEST(Generate, MatchesIndependentReference) {
  // Values from tests/oracles/reference_values.py (numpy, separate implementation).
  const ParameterPoint p = ParameterPoint::from_angles({1.1, 0.7, 0.4, 2.0});
  const Matrix5 m = generate(p, Spectrum(Vector5{5.0, 3.0, 1.0, -2.0, -4.0})).entries;
  EXPECT_LT(std::abs(m(0, 1) - Complex(0.0917043322589377, 1.8339605735117028)), 1e-13);
  EXPECT_LT(std::abs(m(2, 4) - Complex(-0.09047952932438896, 0.009071256172922204)), 1e-13);
  EXPECT_LT(std::abs(m(3, 3) - Complex(-0.4432560903869146, 0.0)), 1e-13);
}

TEST(Generate, OracleRecoversPrescribedSpectrum) {
  Sampler sample(32);
  const Spectrum s(Vector5{Complex(1, 2), -3.0, Complex(0, 0.5), 7.0, Complex(-1, -1)});
  for (int k = 0; k < 20; ++k) {
    const Matrix5 m = generate(sample.point(), s).entries;
    EXPECT_NO_THROW(match_spectra(eig5(m), s.values(), std::nullopt, 1e-8));
  }
}

TEST(Generate, GaugeShiftOfBothAzimuthsLeavesMatrixUnchanged) {
  Sampler sample(33);
  for (int k = 0; k < 50; ++k) {
    const ParameterPoint p = sample.point();
    const Spectrum s = sample.complex_spectrum();
    const double t = sample.uniform(0.0, kTwoPi);
    const auto a = p.angles();
    const ParameterPoint shifted = ParameterPoint::from_angles({a[0], a[1] + t, a[2], a[3] + t});
    EXPECT_LT(max_abs_diff(generate(p, s).entries, generate(shifted, s).entries), 1e-12);
  }
}

TEST(Generate, DegenerateSpectrumIsScalarMatrix) {
  Sampler sample(34);
  const Complex v(2.5, -1.0);
  const Matrix5 m = generate(sample.point(), Spectrum(Vector5{v, v, v, v, v})).entries;
  EXPECT_LT(max_abs_diff(m, v * Matrix5::identity()), 1e-13);
}

TEST(Eigenvectors, StandardBasisAtIdentityPoint) {
  const EigenPairs pairs = eigenvectors(ParameterPoint{});
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t k = 0; k < kDim; ++k) EXPECT_LT(std::abs(pairs[i].vector[k] - (i == k ? 1.0 : 0.0)), 1e-15);
}

TEST(Eigenvectors, Orthonormal) {
  Sampler sample(35);
  for (int trial = 0; trial < 200; ++trial) {
    const EigenPairs pairs = eigenvectors(sample.point());
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j)
        EXPECT_LT(std::abs(inner(pairs[i].vector, pairs[j].vector) - (i == j ? 1.0 : 0.0)), 1e-12);
  }
}

TEST(Eigenvectors, RealWhenAzimuthsAgree) {
  Sampler sample(36);
  for (int trial = 0; trial < 200; ++trial) {
    for (const auto& pair : eigenvectors(sample.point_with_equal_phi()))
      for (const auto& z : pair.vector) EXPECT_LT(std::abs(z.imag()), 1e-12);
  }
}

TEST(Eigenvectors, ComponentsAreXi) {
  Sampler sample(37);
  const ParameterPoint p = sample.point();
  const EigenPairs pairs = eigenvectors(p);
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t k = 0; k < kDim; ++k) EXPECT_EQ(pairs[i].vector[k], xi(i, k, p));
}

TEST(Generate, EigenEquationHolds) {
  Sampler sample(38);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ParameterPoint p = sample.point();
    const Spectrum s = sample.complex_spectrum();
    const Matrix5 m = generate(p, s).entries;
    const EigenPairs pairs = eigenvectors(p);
    for (std::size_t i = 0; i < kDim; ++i)
      worst = std::max(worst, norm(m * pairs[i].vector - s[i] * pairs[i].vector));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Generate, SharedEigenbasisCommutes) {
  Sampler sample(39);
  for (int trial = 0; trial < 200; ++trial) {
    const ParameterPoint p = sample.point();
    const Matrix5 a = generate(p, sample.complex_spectrum()).entries;
    const Matrix5 b = generate(p, sample.complex_spectrum()).entries;
    EXPECT_LT(max_abs(a * b - b * a), 1e-9);
  }
}

TEST(Generate, LinearInSpectrum) {
  Sampler sample(40);
  const Complex a(0.3, 1.1), b(-1.7, 0.2);
  for (int trial = 0; trial < 200; ++trial) {
    const ParameterPoint p = sample.point();
    const Spectrum l = sample.complex_spectrum(), mu = sample.complex_spectrum();
    Vector5 mix;
    for (std::size_t k = 0; k < kDim; ++k) mix[k] = a * l[k] + b * mu[k];
    const Matrix5 lhs = generate(p, Spectrum(mix)).entries;
    const Matrix5 rhs = a * generate(p, l).entries + b * generate(p, mu).entries;
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
  }
}

TEST(Classify, RealDiagonalMatrix) {
  const FamilyFlags f = classify(Matrix5::diagonal({1.0, 2.0, 3.0, 4.0, 5.0}), 1e-10);
  EXPECT_TRUE(f.diagonal);
  EXPECT_TRUE(f.hermitian);
  EXPECT_TRUE(f.symmetric);
  EXPECT_FALSE(f.anti_hermitian);
  EXPECT_FALSE(f.imaginary_symmetric);
}

TEST(Classify, RejectsNonPositiveTolerance) {
  EXPECT_THROW(classify(Matrix5{}, 0.0), std::invalid_argument);
}

TEST(Classify, RealSpectrumGivesHermitian) {
  Sampler sample(41);
  for (int trial = 0; trial < 200; ++trial)
    EXPECT_TRUE(classify(generate(sample.point(), sample.real_spectrum()).entries, 1e-10).hermitian);
}

TEST(Classify, ImaginarySpectrumWithEqualAzimuthsGivesImaginarySymmetric) {
  Sampler sample(42);
  for (int trial = 0; trial < 200; ++trial) {
    const FamilyFlags f = classify(generate(sample.point_with_equal_phi(), sample.imaginary_spectrum()), 1e-10);
    EXPECT_TRUE(f.imaginary_symmetric);
    EXPECT_TRUE(f.anti_hermitian);
    EXPECT_TRUE(f.real_eigenvectors);
  }
}

TEST(Classify, WithoutProvenanceEigenvectorFlagStaysUnset) {
  GeneratedMatrix g = generate(ParameterPoint::from_angles({0.3, 1.0, 0.9, 1.0}), kSpin);
  EXPECT_TRUE(classify(g, 1e-10).real_eigenvectors);
  g.provenance.reset();
  EXPECT_FALSE(classify(g, 1e-10).real_eigenvectors);
}

TEST(PredictFamily, AllAnglesZeroIsDiagonal) {
  Sampler sample(43);
  EXPECT_TRUE(predict_family(ParameterPoint{}, sample.complex_spectrum()).diagonal);
}

TEST(PredictFamily, ImaginarySpectrumIsAntiHermitian) {
  Sampler sample(44);
  const Spectrum s(Vector5{Complex(0, 3), Complex(0, -1), Complex(0, 2), Complex(0, 1), Complex(0, -4)});
  const FamilyFlags f = predict_family(sample.point(), s);
  EXPECT_TRUE(f.anti_hermitian);
  EXPECT_FALSE(f.hermitian);
  EXPECT_FALSE(f.symmetric);
}

TEST(PredictFamily, GeneralCase) {
  Sampler sample(45);
  EXPECT_TRUE(predict_family(sample.point(), sample.complex_spectrum()).general());
}

TEST(PredictFamily, AgreesWithClassifyOnRandomFamilies) {
  Sampler sample(46);
  int disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    ParameterPoint p;
    switch (trial % 3) {
      case 0: p = sample.point(); break;
      case 1: p = sample.point_with_equal_phi(); break;
      default: {
        const Direction d = sample.direction();
        p = {d, d};
      }
    }
    Spectrum s;
    switch ((trial / 3) % 3) {
      case 0: s = sample.real_spectrum(); break;
      case 1: s = sample.imaginary_spectrum(); break;
      default: s = sample.complex_spectrum();
    }
    if (!(predict_family(p, s) == classify(generate(p, s), 1e-10))) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}
