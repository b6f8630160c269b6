use schurlab_core::enumeration::{enumerate_srings, EnumerationTask};
use schurlab_core::group::make_group;
use std::time::Instant;

fn main() {
    for orders in [vec![3u32, 3, 2], vec![3, 3, 3]] {
        let g = make_group(&orders).unwrap();
        let t = Instant::now();
        let cat = enumerate_srings(&EnumerationTask::new(&g)).unwrap();
        let mut ranks: Vec<usize> = cat.records.iter().map(|r| r.ring.rank()).collect();
        ranks.sort();
        println!(
            "orders {:?}: {} S-rings in {:.2?} (complete={}) ranks={:?}",
            orders, cat.records.len(), t.elapsed(), cat.complete, ranks
        );
    }
}
