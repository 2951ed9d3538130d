#include "osar/pgm.hpp"

#include <algorithm>
#include <cmath>

#include "osar/errors.hpp"

namespace osar {

std::string emit_pgm(const ComplexGrid& image, double db_floor) {
    if (image.empty()) throw InvalidParameter("empty image");
    if (!(db_floor < 0.0)) throw InvalidParameter("dB floor must be negative");
    double peak = 0.0;
    for (const auto& v : image.data) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) peak = 1.0;
    std::string out = "P5\n" + std::to_string(image.cols) + " " + std::to_string(image.rows) + "\n255\n";
    const std::size_t header = out.size();
    out.resize(header + image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        const double mag = std::abs(image.data[i]);
        double level = 0.0;
        if (mag > 0.0) {
            const double db = 20.0 * std::log10(mag / peak);
            level = std::clamp(std::round(255.0 * (db - db_floor) / (0.0 - db_floor)), 0.0, 255.0);
        }
        out[header + i] = static_cast<char>(static_cast<unsigned char>(level));
    }
    return out;
}

}  // namespace osar
