#include "sginv_app.hpp"

int main(int argc, char** argv)
{
    return sginv::run_cli(argc, argv);
}
