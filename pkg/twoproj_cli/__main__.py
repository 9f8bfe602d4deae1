from twoproj_cli import main

main()
