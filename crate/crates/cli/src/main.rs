fn main() {
    println!("shelltrap");
}
