#include "jetdiff/variable.hpp"

#include "jetdiff/error.hpp"

namespace jetdiff {

namespace {

void check_index(int value, const char* what) {
    if (value < 1 || value > 255) throw UsageError(std::string(what) + " index out of range: " + std::to_string(value));
}

}  // namespace

Variable Variable::base(int component) {
    check_index(component, "base coordinate");
    return Variable(Kind::Base, 0, component);
}

Variable Variable::jet(int order, int component) {
    check_index(order, "jet order");
    check_index(component, "jet component");
    return Variable(Kind::Jet, order, component);
}

Variable Variable::group(int index) {
    check_index(index, "group parameter");
    return Variable(Kind::Group, 0, index);
}

Variable Variable::series() { return Variable(Kind::Series, 0, 0); }

std::string Variable::name() const {
    switch (kind_) {
        case Kind::Base:
            return "z" + std::to_string(index_);
        case Kind::Jet:
            return "f" + std::to_string(index_) + std::string(order_, '\'');
        case Kind::Group:
            return "a" + std::to_string(index_);
        case Kind::Series:
            return "t";
    }
    return "?";
}

}  // namespace jetdiff
