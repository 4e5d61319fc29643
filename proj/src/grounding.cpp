#include "driveqa/grounding.hpp"

#include <algorithm>
#include <regex>

namespace driveqa::eval {

std::optional<ControlTriple> parse_actions(const std::string& text) {
    static const std::regex accel_re(R"(accelerator pedal\s*:?\s*(\d+(?:\.\d+)?)\s*%)",
                                     std::regex::icase);
    static const std::regex brake_re(R"(brake pedal\s*:?\s*(\d+(?:\.\d+)?)\s*%)",
                                     std::regex::icase);
    static const std::regex steer_straight_re(R"(steering\s*:?\s*straight)", std::regex::icase);
    static const std::regex steer_pct_re(
        R"(steering\s*:?\s*(\d+(?:\.\d+)?)\s*%\s*to the\s*(left|right))", std::regex::icase);

    std::smatch am, bm;
    if (!std::regex_search(text, am, accel_re)) return std::nullopt;
    if (!std::regex_search(text, bm, brake_re)) return std::nullopt;

    double accel = std::clamp(std::stod(am[1]) / 100.0, 0.0, 1.0);
    double brake = std::clamp(std::stod(bm[1]) / 100.0, 0.0, 1.0);
    // A reply claiming both pedals is not a realizable command; keep the
    // stronger channel (brake on a tie).
    if (accel > 0.0 && brake > 0.0) {
        if (accel > brake)
            brake = 0.0;
        else
            accel = 0.0;
    }

    double steering = 0.0;
    std::smatch sm;
    if (std::regex_search(text, sm, steer_pct_re)) {
        const double v = std::clamp(std::stod(sm[1]) / 100.0, 0.0, 1.0);
        std::string side = sm[2];
        std::transform(side.begin(), side.end(), side.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        steering = side == "left" ? -v : v;
    } else if (std::regex_search(text, sm, steer_straight_re)) {
        steering = 0.0;
    }

    return ControlTriple(accel, brake, steering);
}

}  // namespace driveqa::eval
