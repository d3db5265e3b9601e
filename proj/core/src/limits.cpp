#include "commcalc/limits.hpp"

#include <mutex>

#include "commcalc/words.hpp"

namespace commcalc {
namespace {

std::mutex g_mutex;
Limits g_limits;

}  // namespace

Limits defaultLimits() {
  std::lock_guard<std::mutex> lock(g_mutex);
  return g_limits;
}

void setDefaultLimits(const Limits& limits) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_limits = limits;
  setWordLetterLimit(limits.maxWordLetters);
}

}  // namespace commcalc
