#include "sysmodel/core/message.hpp"

#include <sstream>

namespace sysmodel {

std::string render_message(const Message& m) {
    std::ostringstream out;
    out << (m.tag == MsgTag::Call ? "call:" : "ret:");
    out << m.sender.name << "->" << m.receiver.name << '.' << m.selector << '(';
    for (std::size_t i = 0; i < m.args.size(); ++i) {
        if (i) out << ',';
        out << render_value(m.args[i]);
    }
    out << ')';
    return out.str();
}

}  // namespace sysmodel
