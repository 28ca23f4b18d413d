#include "sovxxz/errors.hpp"

// Out-of-line anchor so the vtable of the error hierarchy lives here.
namespace sovxxz {}
