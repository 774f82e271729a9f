from splitdom.cli import main

main()
