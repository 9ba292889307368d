#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Invalid model or experiment configuration; the message lists every
// violated invariant.
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A preset's parameters fall outside the hypothesis of the bound it tests.
// The message shows both sides of the violated inequality.
class HypothesisError : public std::invalid_argument {
  public:
    explicit HypothesisError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hk
