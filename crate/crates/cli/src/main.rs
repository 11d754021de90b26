fn main() {
    // Filled in once the harness lands.
}
