#pragma once

#include <gtest/gtest.h>

#include <string>

#include "momentlab/real.hpp"

namespace momentlab::test {

inline Real R(const char* s) { return Real(std::string_view(s)); }
inline Complex C(const char* re, const char* im) { return Complex(R(re), R(im)); }

inline ::testing::AssertionResult close(const Real& got, const Real& want, const Real& tol) {
    Real err = abs(got - want);
    if (err <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "got " << got.to_string(30) << ", want " << want.to_string(30)
                                         << ", |diff| = " << err.to_string(3) << " > " << tol.to_string(3);
}

inline ::testing::AssertionResult close(const Complex& got, const Complex& want, const Real& tol) {
    Real err = abs(got - want);
    if (err <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "got " << got.to_string(30) << ", want " << want.to_string(30)
                                         << ", |diff| = " << err.to_string(3) << " > " << tol.to_string(3);
}

inline ::testing::AssertionResult rel_close(const Complex& got, const Complex& want, const Real& tol) {
    return close(got, want, tol * abs(want));
}

}  // namespace momentlab::test
