// Copyright 2026 The TopoFit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topofit/manifest.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "topofit/types.hpp"

namespace {

using namespace topofit;

TEST(Manifest, KeepsInsertionOrderAndOverwrites) {
  KeyValues kv;
  kv.set("b", "1");
  kv.set("a", "two words");
  kv.set("b", "3");
  EXPECT_EQ(kv.str(), "b = 3\na = two words\n");
}

TEST(Manifest, ParseRoundTrip) {
  KeyValues kv;
  kv.set("tool", "topofit");
  kv.set("arg.lr", "0.002");
  kv.set("seed", "18446744073709551615");
  kv.set("empty", "");
  std::istringstream in(kv.str());
  const KeyValues back = KeyValues::parse(in);
  EXPECT_EQ(back.entries(), kv.entries());
  EXPECT_EQ(back.get_double("arg.lr"), 0.002);
  EXPECT_EQ(back.get_uint("seed"), 18446744073709551615ull);
}

TEST(Manifest, CommentsAndWhitespace) {
  std::istringstream in("# header\n\n  key =  value with spaces  \r\nn=-4\n");
  const KeyValues kv = KeyValues::parse(in);
  EXPECT_EQ(kv.get("key"), "value with spaces");
  EXPECT_EQ(kv.get_int("n"), -4);
  EXPECT_FALSE(kv.has("# header"));
}

TEST(Manifest, ErrorsNameSourceAndLine) {
  std::istringstream dup("a = 1\na = 2\n");
  try {
    KeyValues::parse(dup, "run.manifest");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("run.manifest:2"), std::string::npos) << e.what();
  }
  std::istringstream no_eq("a 1\n");
  EXPECT_THROW(KeyValues::parse(no_eq), Error);
  std::istringstream empty_key(" = 1\n");
  EXPECT_THROW(KeyValues::parse(empty_key), Error);
}

TEST(Manifest, TypedAccessAndValidation) {
  KeyValues kv;
  kv.set("x", "1.5e3");
  kv.set("bad", "12abc");
  EXPECT_EQ(kv.get_double("x"), 1500.0);
  EXPECT_THROW(kv.get_int("bad"), Error);
  EXPECT_THROW(kv.get("missing"), Error);
  EXPECT_FALSE(kv.find("missing").has_value());
  EXPECT_THROW(kv.set("has space", "1"), Error);
  EXPECT_THROW(kv.set("k", "two\nlines"), Error);
  EXPECT_NO_THROW(kv.require_known({"x", "bad"}));
  EXPECT_THROW(kv.require_known({"x"}), Error);
}

}  // namespace
