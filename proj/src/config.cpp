#include "breakwatch/config.hpp"

#include "breakwatch/errors.hpp"

namespace breakwatch {

std::string to_string(Method m) {
    switch (m) {
        case Method::edm: return "edm";
        case Method::edmx: return "edmx";
        case Method::edivisive: return "edivisive";
    }
    return "edm";
}

std::string to_string(BetweenWindow w) {
    return w == BetweenWindow::head ? "head" : "tail";
}

std::string to_string(MedianSource s) {
    return s == MedianSource::tree ? "tree" : "exact";
}

std::optional<Method> method_from_string(const std::string& name) {
    if (name == "edm") return Method::edm;
    if (name == "edmx") return Method::edmx;
    if (name == "edivisive") return Method::edivisive;
    return std::nullopt;
}

std::optional<BetweenWindow> between_from_string(const std::string& name) {
    if (name == "head") return BetweenWindow::head;
    if (name == "tail") return BetweenWindow::tail;
    return std::nullopt;
}

std::optional<MedianSource> source_from_string(const std::string& name) {
    if (name == "tree") return MedianSource::tree;
    if (name == "exact") return MedianSource::exact;
    return std::nullopt;
}

void DetectionConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidAlphaError(alpha);
    if (delta < 2) throw InvalidConfigError("delta must be at least 2");
    if (tree_depth < 1) throw InvalidConfigError("tree depth must be at least 1");
    if (tree_depth > 30) throw InvalidConfigError("tree depth above 30 is not supported");
    if (!(level > 0.0 && level < 1.0)) throw InvalidConfigError("significance level must lie in (0, 1)");
}

}  // namespace breakwatch
