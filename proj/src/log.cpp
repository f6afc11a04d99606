#include "lhm/log.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace lhm {
namespace {

void default_sink(LogLevel level, std::string_view message)
{
    if (level == LogLevel::debug) {
        return;
    }
    std::clog << (level == LogLevel::warning ? "warning: " : "note: ") << message << '\n';
}

std::mutex& sink_mutex()
{
    static std::mutex m;
    return m;
}

LogSink& current_sink()
{
    static LogSink sink = default_sink;
    return sink;
}

}  // namespace

LogSink set_log_sink(LogSink sink)
{
    std::lock_guard lock(sink_mutex());
    if (!sink) {
        sink = default_sink;
    }
    return std::exchange(current_sink(), std::move(sink));
}

void log(LogLevel level, std::string_view message)
{
    std::lock_guard lock(sink_mutex());
    current_sink()(level, message);
}

}  // namespace lhm
