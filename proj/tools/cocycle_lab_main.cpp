#include <cstdio>

int main()
{
    std::puts("cocycle-lab: placeholder");
    return 0;
}
