#include "kotaro/random.hpp"

#include <vector>

namespace kotaro {

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (stream.size() + 1) + 1);
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  // length tag keeps {a} and {a, 0} apart
  words.push_back(static_cast<std::uint32_t>(stream.size()));
  for (auto s : stream) push(s);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace kotaro
