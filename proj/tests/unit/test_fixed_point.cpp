/*
 * Copyright 2026 The remsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>

#include "remsim/error.hpp"
#include "remsim/fixed_point.hpp"

using namespace remsim;

TEST(FixedPoint, RoundsToNearestEven) {
  const double lsb = std::ldexp(1.0, -16);
  EXPECT_EQ(FixedPoint::from_real(0.5 * lsb, kStateFormat).raw(), 0);
  EXPECT_EQ(FixedPoint::from_real(1.5 * lsb, kStateFormat).raw(), 2);
  EXPECT_EQ(FixedPoint::from_real(2.5 * lsb, kStateFormat).raw(), 2);
  EXPECT_EQ(FixedPoint::from_real(-1.5 * lsb, kStateFormat).raw(), -2);
  EXPECT_EQ(FixedPoint::from_real(1.0, kStateFormat).raw(), 65536);
}

TEST(FixedPoint, RangeIsEnforcedOnConstruction) {
  EXPECT_DOUBLE_EQ(kStateFormat.max_value(), 32768.0 - std::ldexp(1.0, -16));
  EXPECT_DOUBLE_EQ(kStateFormat.min_value(), -32768.0);
  EXPECT_NO_THROW(FixedPoint::from_real(-32768.0, kStateFormat));
  EXPECT_THROW(FixedPoint::from_real(32768.0, kStateFormat), RangeError);
  EXPECT_THROW(FixedPoint::from_real(-32769.0, kStateFormat), RangeError);
  EXPECT_THROW(FixedPoint::from_real(NAN, kStateFormat), RangeError);
}

TEST(FixedPoint, SaturatingConversionSetsStickyFlag) {
  FixedStatus st;
  const FixedPoint big = FixedPoint::saturating(1e9, kStateFormat, st);
  EXPECT_EQ(big.raw(), kStateFormat.max_raw());
  EXPECT_TRUE(st.saturated());
  const FixedPoint ok = FixedPoint::saturating(1.0, kStateFormat, st);
  EXPECT_EQ(ok.raw(), 65536);
  EXPECT_TRUE(st.saturated());  // sticky
  EXPECT_EQ(st.events(), 1u);
}

TEST(FixedPoint, WordRoundTrip) {
  for (double v : {0.0, 1.0, -1.0, -65.0, 123.456, -32768.0}) {
    const FixedPoint a = FixedPoint::from_real(v, kStateFormat);
    EXPECT_EQ(FixedPoint::from_word(a.to_word(), kStateFormat), a) << v;
  }
  EXPECT_THROW(FixedPoint::from_word(0, kAccFormat), ConfigError);
}

TEST(FixedPoint, ArithmeticRoundsAndSaturates) {
  FixedStatus st;
  const FixedPoint a = FixedPoint::from_real(1.5, kStateFormat);
  const FixedPoint b = FixedPoint::from_real(-2.25, kStateFormat);
  EXPECT_DOUBLE_EQ(add(a, b, kStateFormat, st).to_double(), -0.75);
  EXPECT_DOUBLE_EQ(sub(a, b, kStateFormat, st).to_double(), 3.75);
  EXPECT_DOUBLE_EQ(mul(a, b, kStateFormat, st).to_double(), -3.375);
  EXPECT_FALSE(st.saturated());

  const FixedPoint big = FixedPoint::from_real(30000.0, kStateFormat);
  EXPECT_EQ(add(big, big, kStateFormat, st).raw(), kStateFormat.max_raw());
  EXPECT_TRUE(st.saturated());
  st.clear();
  EXPECT_EQ(mul(big, FixedPoint::from_real(-2.0, kStateFormat), kStateFormat, st).raw(), kStateFormat.min_raw());
  EXPECT_TRUE(st.saturated());
}

TEST(FixedPoint, MixedFormatsCompareByValue) {
  const FixedPoint a = FixedPoint::from_real(0.5, kGatingFormat);
  const FixedPoint b = FixedPoint::from_real(0.5, kStateFormat);
  EXPECT_EQ(a, b);
  EXPECT_LT(FixedPoint::from_real(0.25, kGatingFormat), b);
  EXPECT_EQ(clamp(FixedPoint::from_real(2.0, kStateFormat), FixedPoint::from_real(-1.0, kStateFormat),
                  FixedPoint::from_real(1.0, kStateFormat))
                .to_double(),
            1.0);
}

TEST(FixedPoint, FormatConversionRounds) {
  FixedStatus st;
  const FixedPoint g = FixedPoint::from_raw((std::int64_t{1} << 30) / 3, kGatingFormat);
  const FixedPoint s = g.to(kStateFormat, st);
  EXPECT_NEAR(s.to_double(), 1.0 / 3.0, std::ldexp(1.0, -17));
  EXPECT_FALSE(st.saturated());
  EXPECT_EQ(FixedPoint::from_real(5.0, kStateFormat).to(kGatingFormat, st).raw(), kGatingFormat.max_raw());
  EXPECT_TRUE(st.saturated());
}
