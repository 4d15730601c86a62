use frontdga::diagram::{parse_front, serialize_events, FrontDiagram};
use frontdga::Event;
use proptest::prelude::*;

/// A random closed front: choices drive cusps and crossings, then every
/// remaining pair of strands is closed from the top.
fn front() -> impl Strategy<Value = Vec<Event>> {
    prop::collection::vec((0u8..3, 0usize..8), 1..14).prop_map(|choices| {
        let mut events = Vec::new();
        let mut n = 0usize;
        for (kind, r) in choices {
            match kind {
                0 => {
                    events.push(Event::lc(r % (n + 1) + 1));
                    n += 2;
                }
                1 if n >= 2 => events.push(Event::x(r % (n - 1) + 1)),
                2 if n >= 2 => {
                    events.push(Event::rc(r % (n - 1) + 1));
                    n -= 2;
                }
                _ => {}
            }
        }
        while n > 0 {
            events.push(Event::rc(1));
            n -= 2;
        }
        events
    })
}

proptest! {
    #[test]
    fn text_round_trip(events in front()) {
        let d = FrontDiagram::from_events(events).unwrap();
        let text = d.to_text();
        let again = parse_front(&text).unwrap();
        prop_assert_eq!(again.to_text(), text.clone());
        prop_assert_eq!(serialize_events(again.events()), text);
        prop_assert_eq!(again.names(), d.names());
        prop_assert!(again == d);
    }
}
