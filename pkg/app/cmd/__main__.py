if __name__ == "__main__":
    from app.cmd.cmd import main

    main()
