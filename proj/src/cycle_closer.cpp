#include "srg/cycle_closer.hpp"

#include <cassert>
#include <stdexcept>

namespace srg {

cycle_closer::cycle_closer(std::vector<vertex_id> path, edge_set& edges)
    : order_(std::move(path)), edges_(&edges) {
    if (order_.size() < 3) throw std::invalid_argument("cycle closing needs n >= 3");
    vertex_id max_id = 0;
    for (const vertex_id v : order_) max_id = std::max(max_id, v);
    pos_.assign(static_cast<std::size_t>(max_id) + 1, -1);
    endstubs_.assign(static_cast<std::size_t>(max_id) + 1, 0);
    for (std::size_t i = 0; i < order_.size(); ++i)
        pos_[static_cast<std::size_t>(order_[i])] = static_cast<std::int32_t>(i);
}

bool cycle_closer::present(vertex_id v, rng_engine& rng) {
    return present_impl(v, std::nullopt, &rng);
}

bool cycle_closer::present(vertex_id v, std::optional<end_target> forced) {
    return present_impl(v, forced, nullptr);
}

// cycle = head..pred(v) along the path, stubedge pred(v)->tail, then
// tail..v walked backward, closed by the new edge {v, head}
void cycle_closer::close_with_pred_stub(vertex_id v) {
    const vertex_id head = order_.front();
    edges_->add(v, head);
    const auto vp = static_cast<std::size_t>(pos_[static_cast<std::size_t>(v)]);
    cycle_.reserve(order_.size());
    for (std::size_t i = 0; i < vp; ++i) cycle_.push_back(order_[i]);
    for (std::size_t i = order_.size(); i-- > vp;) cycle_.push_back(order_[i]);
    closed_ = true;
}

// mirror image: head..v, new edge {v, tail}, then tail..succ(v) backward,
// closed by succ(v)'s stubedge to the head
void cycle_closer::close_with_succ_stub(vertex_id v) {
    const vertex_id tail = order_.back();
    edges_->add(v, tail);
    const auto vp = static_cast<std::size_t>(pos_[static_cast<std::size_t>(v)]);
    cycle_.reserve(order_.size());
    for (std::size_t i = 0; i <= vp; ++i) cycle_.push_back(order_[i]);
    for (std::size_t i = order_.size(); i-- > vp + 1;) cycle_.push_back(order_[i]);
    closed_ = true;
}

bool cycle_closer::present_impl(vertex_id v, std::optional<end_target> forced, rng_engine* rng) {
    if (closed_) throw std::logic_error("cycle already closed");
    rounds_ += 1;
    const vertex_id head = order_.front();
    const vertex_id tail = order_.back();

    if (v == head || v == tail) {
        edges_->add(head, tail);
        cycle_ = order_;
        closed_ = true;
        return true;
    }

    const auto vp = static_cast<std::size_t>(pos_[static_cast<std::size_t>(v)]);
    const vertex_id pred = order_[vp - 1];
    const vertex_id succ = order_[vp + 1];
    if (has_endstub(pred, end_target::to_tail)) {
        close_with_pred_stub(v);
        return true;
    }
    if (has_endstub(succ, end_target::to_head)) {
        close_with_succ_stub(v);
        return true;
    }

    const end_target dir = forced ? *forced
                                  : (rng->flip() ? end_target::to_tail : end_target::to_head);
    endstubs_[static_cast<std::size_t>(v)] |= static_cast<std::uint8_t>(dir);
    edges_->add(v, dir == end_target::to_head ? head : tail);
    return false;
}

closure_result close_cycle(const std::vector<vertex_id>& path, rng_engine& rng, edge_set& edges) {
    cycle_closer closer(path, edges);
    const auto n = static_cast<std::uint64_t>(path.size());
    while (!closer.closed()) {
        const auto v = path[static_cast<std::size_t>(rng.below(n))];
        closer.present(v, rng);
    }
    return {closer.cycle(), closer.rounds_used()};
}

} // namespace srg
