#include "roughren/config.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace roughren {

namespace {
constexpr double kSlack = 1e-12;
}

std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::exact;
  if (text == "float") return Mode::floating;
  throw std::invalid_argument("mode must be exact or float, got " + text);
}

int truncation_for(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be positive");
  return static_cast<int>(std::floor(1.0 / gamma + kSlack));
}

void RunConfig::validate() const {
  if (d < 1 || d > 9) throw std::invalid_argument("d must lie in [1, 9]");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (truncation < 1 || truncation > 6) throw std::invalid_argument("N must lie in [1, 6]");
  if (gamma * truncation > 1.0 + kSlack || gamma * (truncation + 1) <= 1.0 + kSlack)
    throw std::invalid_argument("need gamma*N <= 1 < gamma*(N+1); gamma = " + std::to_string(gamma) +
                                " gives N = " + std::to_string(truncation_for(gamma)));
  if (grid_depth < 1 || grid_depth > 16) throw std::invalid_argument("grid depth must lie in [1, 16]");
}

RunConfig default_config() {
  RunConfig c;
  if (const char* env = std::getenv("ROUGHREN_OUT"); env && *env) c.output_dir = env;
  return c;
}

}  // namespace roughren
