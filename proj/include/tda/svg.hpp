#pragma once

#include <iosfwd>

#include "tda/landscape.hpp"
#include "tda/persistence.hpp"

namespace tda {

/// Diagram scatter above the y = x diagonal; infinite deaths drawn as
/// markers at the top edge. Deterministic output bytes.
void write_diagram_svg(std::ostream& out, const PersistenceDiagram& d);

/// Horizontal bars grouped by homology dimension.
void write_barcode_svg(std::ostream& out, const Barcode& b);

/// Overlaid level curves of one landscape.
void write_landscape_svg(std::ostream& out, const PersistenceLandscape& L);

}  // namespace tda
