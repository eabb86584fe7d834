// Placeholder main; the full CLI is assembled once the pipeline modules exist.
int main() { return 0; }
