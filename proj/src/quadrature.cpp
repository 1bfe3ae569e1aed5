// Quadrature is header-only; this translation unit anchors the library target.
#include "accelshift/quadrature.hpp"
