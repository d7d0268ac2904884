#include "chordlm/ingest/expansion.h"

#include <algorithm>

namespace chordlm::ingest {

std::vector<Slice> full_expand(std::span<const NoteEvent> events) {
  std::vector<const NoteEvent*> order;
  order.reserve(events.size());
  for (const NoteEvent& e : events) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const NoteEvent* a, const NoteEvent* b) { return a->onset < b->onset; });

  std::vector<Slice> slices;
  std::vector<const NoteEvent*> active;
  std::size_t next = 0;
  while (next < order.size()) {
    const Rational now = order[next]->onset;
    while (next < order.size() && order[next]->onset == now) active.push_back(order[next++]);
    std::erase_if(active, [&](const NoteEvent* e) { return e->offset() <= now; });

    Slice slice;
    slice.onset = now;
    for (const NoteEvent* e : active) slice.pitches.push_back(e->pitch);
    std::sort(slice.pitches.begin(), slice.pitches.end());
    slice.pitches.erase(std::unique(slice.pitches.begin(), slice.pitches.end()), slice.pitches.end());
    slices.push_back(std::move(slice));
  }
  return slices;
}

}  // namespace chordlm::ingest
