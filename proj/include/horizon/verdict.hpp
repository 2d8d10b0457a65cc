#ifndef HORIZON_VERDICT_HPP
#define HORIZON_VERDICT_HPP

#include <string>
#include <vector>

namespace horizon {

enum class Region { Inside, Boundary, Outside };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::Inside: return "Inside";
    case Region::Boundary: return "Boundary";
    default: return "Outside";
  }
}

struct Verdict {
  Region region = Region::Outside;
  double margin = 0.0;                 // min normalized slack; negative = violated
  std::vector<std::string> violated;   // identifiers of failed conditions
  bool degenerate_scaling = false;     // B ~ 0 fallback was taken
};

}  // namespace horizon

#endif
