#pragma once

#include <string>
#include <vector>

#include "remez/certifier.hpp"

namespace remez {

/// SVG scatter of margin against mu(A), one colour per suite. The vertical
/// axis is sign(m) * log10(1 + |m|) so tiny and huge margins share a panel.
std::string render_margin_plot(const std::vector<InequalityReport>& reports);

/// SVG with one panel per degree: exact restricted integral, the
/// eps^{d+1}/(d+1) upper bound and the integral-inequality lower prediction
/// mu(A) * factor * d!, all against eps on a log scale.
std::string render_tightness_plot(const std::vector<TightnessResult>& rows);

/// Both throw std::invalid_argument on empty input and std::runtime_error on
/// I/O failure.
void emit_plot(const std::vector<InequalityReport>& reports, const std::string& path);
void emit_plot(const std::vector<TightnessResult>& rows, const std::string& path);

}  // namespace remez
