#pragma once

#include <stdexcept>
#include <string>

namespace parasurf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// jet_core
class DegenerateJet : public Error { using Error::Error; };
class OrderExceeded : public Error { using Error::Error; };

// paracomplex
class ShapeError : public Error { using Error::Error; };
class GenerationError : public Error { using Error::Error; };
class BasePointNotFound : public Error { using Error::Error; };

// hypersurface / paracontact
class ChartLeak : public Error { using Error::Error; };
class DegenerateFrame : public Error { using Error::Error; };
class DegenerateMetric : public Error { using Error::Error; };

// theorems
class HypothesisNotMet : public Error { using Error::Error; };

// cli
class SchemaError : public Error { using Error::Error; };

} // namespace parasurf
