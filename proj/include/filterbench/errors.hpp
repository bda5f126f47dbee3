#pragma once

#include <stdexcept>
#include <string>

namespace filterbench {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDataset : Error { using Error::Error; };
struct SingleClass : Error { using Error::Error; };
struct ClassTooSmall : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct RateOutOfRange : Error { using Error::Error; };
struct KOutOfRange : Error { using Error::Error; };
struct DegenerateSelection : Error { using Error::Error; };
struct UnknownMethod : Error { using Error::Error; };
struct UnknownScenario : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct MissingReference : Error { using Error::Error; };
struct DegenerateGroup : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

}  // namespace filterbench
