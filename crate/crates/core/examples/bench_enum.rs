use duality_core::order::enumerate::{dist_lattices_up_to, posets_up_to};

fn main() {
    let t = std::time::Instant::now();
    let ps = posets_up_to(6);
    println!("posets <=6: {} in {:?}", ps.len(), t.elapsed());
    let t = std::time::Instant::now();
    let lats = dist_lattices_up_to(20);
    println!("lattices <=20: {} in {:?}", lats.len(), t.elapsed());
}
